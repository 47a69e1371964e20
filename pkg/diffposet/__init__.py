__version__ = VERSION = (0, 1, 0)
