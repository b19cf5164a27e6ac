"""
filterfunc HTTP evaluation service.
"""

from .service import app as service_app

__all__ = ["service_app"]
