from .operators import *  # noqa: F401,F403
from .tensor_data import *  # noqa: F401,F403
from .verdict import *  # noqa: F401,F403
from .exactla import *  # noqa: F401,F403
from .liealg import *  # noqa: F401,F403
from .xmod import *  # noqa: F401,F403
from .braid import *  # noqa: F401,F403
from .natensor import *  # noqa: F401,F403
from .uce import *  # noqa: F401,F403
from .workspace import *  # noqa: F401,F403
from .report import *  # noqa: F401,F403
