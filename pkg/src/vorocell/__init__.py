"""Voronoi cells, bisectors and dominance regions in finite-dimensional l_p spaces."""

from .bisector import (BoundaryPoint, FatProbeReport, NoCrossing, ProbeVerdict, ProofRadius,
                       bisect_boundary, escape_point, fat_probe, harvest_boundary,
                       proof_radius, ray_shoot)
from .dominance import (Classification, Verdict, VoronoiAssignment, cell_pair, classify,
                        f_value, f_values, voronoi_assign)
from .errors import (BadOrigin, DimensionMismatch, DomainError, NoSignChange, NotOnBisector,
                     PreconditionFailed, SceneParseError, VorocellError, ZeroSum, ZeroVector)
from .norms import (NormSpec, clarkson_angle, modulus, modulus_numeric, modulus_source, norm,
                    strong_triangle_residual)
from .raster import (LabelGrid, boundary_fraction, dominance_grid, export_bisector_svg,
                     export_image, export_pgm, fixed_tau, pitch_tau, rasterize)
from .scenefile import dump_scene, dumps_scene, load_scene, loads_scene, scene_digest
from .sites import (Points, Scene, Segments, SequenceSite, Site, check_positive_separation,
                    dist_point_site, site_separation)
from .verify import (VerificationReport, verify_clarkson, verify_not_attained,
                     verify_remark_1d, verify_theorem)

__version__ = "0.1.0"
