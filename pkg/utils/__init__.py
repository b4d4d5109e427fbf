"""
Utils package for loopconf: checkers, solvers and document handling
"""
