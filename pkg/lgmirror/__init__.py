# LG mirror verification toolkit: combinatorics, lattices, quivers and LG numerics
