from .constants import *
from .helpers import *
from .field_grid import *
from .scalar_modes import *
from .vector_beam import *
from .schmidt_analysis import *
from .coherence import *
from .validators import *
from .config import *
from .render import *


__version__ = "1.0.0"
