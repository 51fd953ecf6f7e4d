# Prabhakar Numerics project package
