from .config import Config, load_config  # noqa: F401
from .engine import Engine  # noqa: F401
