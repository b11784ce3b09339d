"""Generalized almost paracontact structures on TM + T*M, checked symbolically."""

import sys

# expanded sums become long left-nested trees
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

__version__ = "0.1.0"
