"""
Models package for loopconf: polynomial, algebra, distribution, module and derivation values
"""
