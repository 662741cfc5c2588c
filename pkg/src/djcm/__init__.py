"""Exact simulation of the double Jaynes-Cummings model with Bell-state preparations."""
from .model import (BlockHamiltonian, BlockIndex, DiagonalConvention, EigensolverError,
                    Scenario, Spectrum, SystemParams, block_spectrum, free_diagonal,
                    interaction_block, rabi_frequency)
from .dressed import (MixingAngles, OrthogonalTransform, TransformSource, build_transform,
                      consistency_residual, numeric_diagonalizer, paper_angles)
from .evolution import (BellAmplitudes, BellDensityMatrix, BlockState, InitialAmplitudes,
                        bell_components, bell_outer_product, evolve, exact_bell_amplitudes,
                        initial_block_state, paper_amplitudes, paper_density_matrix,
                        propagate, propagator, propagator_product_form)
from .measurement import (InversionConvention, InversionSample, ReducedAtomState, Site,
                          inversion_exact, inversion_paper, reduce_atom)
from .ensemble import (CoherentCase, CoherentConfig, InversionSeries, ModeCoupling,
                       RevivalAnalysis, detect_collapse_revival, ensemble_inversion,
                       poisson_weights)
from .verify import VerifyReport, run_verify

__version__ = "0.1.0"
