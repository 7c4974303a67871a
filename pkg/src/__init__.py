from . import operators
from . import dynamics
from . import phase_space
from . import analysis
from . import symmetry
from . import experiments
from . import data
from . import visualization
