class SchedulerError(Exception):
    """Exception class for errors in user scheduling"""
