"""
Routes package for loopconf report service
"""
# Export blueprints for registration in app.py
from routes.api import api_bp

__all__ = [
    'api_bp',
]
