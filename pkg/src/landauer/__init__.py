"""Landauer-type heat bounds that stay informative at zero temperature."""

from .bounds import (BoundEvaluation, BoundStatus, closed_form_gapped_T0,
                     closed_form_phonon_T0, closed_form_waveguide,
                     invert_entropy_change, modified_bound,
                     original_landauer_bound, q_of_reference, s_of_reference)
from .envmodels import (BosonicMode, DebyePhonon, EnvironmentModel,
                        FiniteSpectrum, GappedBCS, TabulatedHeatCapacity,
                        Waveguide1D, entropy_range, model_from_config)

__all__ = [
    "BoundEvaluation", "BoundStatus", "closed_form_gapped_T0", "closed_form_phonon_T0",
    "closed_form_waveguide", "invert_entropy_change", "modified_bound",
    "original_landauer_bound", "q_of_reference", "s_of_reference",
    "BosonicMode", "DebyePhonon", "EnvironmentModel", "FiniteSpectrum", "GappedBCS",
    "TabulatedHeatCapacity", "Waveguide1D", "entropy_range", "model_from_config",
]
