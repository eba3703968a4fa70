"""Exact computation in the topological full group of the dyadic odometer.

Subpackages and modules:

- :mod:`cantorgroup.valueset`: finitely generated value groups with exact membership and ordering
- :mod:`cantorgroup.cantor`: points and clopen subsets of Cantor space
- :mod:`cantorgroup.odometer`: piecewise powers of the odometer, their ranks and approximations
- :mod:`cantorgroup.finalg`: finite measured Boolean algebras, extension, joint embedding and amalgamation
- :mod:`cantorgroup.cli`: the ``cantorgroup`` command
"""

__version__ = "0.1.0"
