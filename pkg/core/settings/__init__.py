"""
Prabhakar Numerics Settings Package
"""
