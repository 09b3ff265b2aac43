"""Numerical laboratory for transverse dynamics of Zakharov-Kuznetsov line solitons.

Subpackages cover the closed-form KdV soliton objects (`kdv_core`), the
bifurcation coefficients of the cubic amplitude equation (`coeffs`), the
transverse spectral problem (`spectral`), transversely modulated solitary
waves (`waves2d`), direct time integration of the ZK equation (`zk_sim`),
and extraction/comparison of modulation parameters (`reduction`).
"""

from zklab.kdv_core import C_STAR, Grid1D, Field1D, SolitonParams

__all__ = ["C_STAR", "Grid1D", "Field1D", "SolitonParams"]
__version__ = "0.1.0"
