"""
Finite-difference oracle on complex contours.
"""
