"""Plasmon resonance modes of multi-layer confocal-ellipse structures.

Library layout:

* :mod:`plasmonstack.geometry`   confocal elliptic coordinates, layer stacks
* :mod:`plasmonstack.materials`  contrast parameter and Drude dispersion
* :mod:`plasmonstack.npcore`     Fourier-basis layer-potential actions and matrices
* :mod:`plasmonstack.charpoly`   exact characteristic polynomials and recursions
* :mod:`plasmonstack.spectrum`   cross-validated mode computation
* :mod:`plasmonstack.field`      density solves and perturbed field evaluation
* :mod:`plasmonstack.bie`        independent Nystrom discretization on general curves
* :mod:`plasmonstack.cli`        command-line reproduction pipelines
"""

__version__ = "0.1.0"

from .geometry import EllipticPoint, LayerStack
from .materials import DrudeParams, MaterialConfig
from .spectrum import ModeSet, PlasmonMode, modes

__all__ = [
    "__version__",
    "EllipticPoint",
    "LayerStack",
    "DrudeParams",
    "MaterialConfig",
    "ModeSet",
    "PlasmonMode",
    "modes",
]
