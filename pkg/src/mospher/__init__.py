"""Matrix orthogonal polynomials and spherical functions on spheres.

Exact construction of the bundle-valued spherical functions attached to
the pairs (SO(n+1), SO(n)), their packaging into sequences of matrix
orthogonal polynomials with explicit weights and symmetric differential
operators, and verification of the theory's identities by exact
arithmetic and Gaussian quadrature.
"""

__version__ = "0.1.0"
