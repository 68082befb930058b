"""Twist maps of open Richardson varieties in SL_n, computed exactly."""
