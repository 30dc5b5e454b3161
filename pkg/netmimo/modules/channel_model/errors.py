class ChannelModelError(Exception):
    """Base class for errors in layout, user drop and channel generation"""


class LayoutError(ChannelModelError):
    """Exception class for unsupported or invalid cell layouts"""
