# Prabhakar Numerics engine
