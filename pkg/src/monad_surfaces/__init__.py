"""monad-surfaces: Beilinson monads over finite fields for rational surfaces in P^4.

Surfaces of degree 12 and sectional genus 13 are built from exterior-algebra
monads, their ideals extracted and certified.
"""

__version__ = "0.1.0"
