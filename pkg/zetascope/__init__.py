from .experimentlist import *
from .version import version as __version__
from .baseexperiment import BaseExperiment
from .config import RunConfig
from .launcher import run_experiments, collect_experiment_outputs, iter_output_folders
