from .primetable import PrimesExperiment, SmoothExperiment
from .zeros import ZeroExperiment, ScanExperiment, TildeExperiment
from .truncation import RnExperiment, ArgScanExperiment
from .statistics import DeltaStatsExperiment, PairCorrExperiment, KacExperiment
