from .base_suite import BaseSuite, SuiteReport
from .dimension import DimensionResult, moran_residual, solve_dimension, \
    check_dimension
from .ifs import Interval, LinearMap, IfsSystem, Word, Cylinder, \
    make_gauss_linear_ifs, cylinder_interval, enumerate_generation, \
    leftmost_point, rightmost_point, limit_set_hull, periodic_point, \
    expand_to_grid, grid_points, limit_set_meets, limit_point_in
from .measure import MeasureBound, DensityRecord, measure_interval, \
    density, measure_intervals, density_intervals
from .packing import PackingEstimate, PackingOptions, CertifiedBound, \
    candidate_centers, dmin_sampled, dmin_lower_bound, packing_estimate, \
    sweep
