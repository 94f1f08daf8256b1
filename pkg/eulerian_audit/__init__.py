# Exact-arithmetic Eulerian polynomial identity audit

__version__ = "1.0.0"
