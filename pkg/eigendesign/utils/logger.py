import logging

logger = logging.getLogger("EigenDesign")
"""Default logging interface."""

logger.setLevel(logging.INFO)
