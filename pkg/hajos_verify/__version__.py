"""Keep track of the version for the hajos_verify module."""

__title__ = "hajos_verify"
__description__ = "Exhaustive verification of Hajós' cycle decomposition conjecture on small Eulerian graphs"
__version__ = "0.1.0"
