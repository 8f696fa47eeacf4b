########################
# Workbench Config      #
########################

from dataclasses import dataclass
from pathlib import Path
import os
from typing import Optional

from dotenv import load_dotenv

from app.exceptions import ConfigurationError

# Load environment variables from a .env file into the program's environment
load_dotenv()

ENV_PREFIX = "XCALC_"


def get_project_root() -> Path:
    """
    Get the project root directory.

    Returns:
        Path: The directory holding the ``app`` package.
    """
    return Path(__file__).parent.parent


def _env(name: str, default: str) -> str:
    return os.getenv(f"{ENV_PREFIX}{name}", default)


def _int_setting(value: Optional[int], name: str, default: int) -> int:
    if value is not None:
        return value
    raw = _env(name, str(default))
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{ENV_PREFIX}{name} must be an integer, got {raw!r}") from e


@dataclass
class WorkbenchConfig:
    """
    Workbench configuration settings.

    Every setting is taken from the constructor argument when given, else
    from the ``XCALC_``-prefixed environment variable (a ``.env`` file is
    loaded on import), else from the default.
    """

    def __init__(
        self,
        base_dir: Optional[Path] = None,
        fuel: Optional[int] = None,
        node_budget: Optional[int] = None,
        seed: Optional[int] = None,
        cases: Optional[int] = None,
        search_depth: Optional[int] = None,
        universe_size: Optional[int] = None,
        auto_export: Optional[bool] = None,
        default_encoding: Optional[str] = None
    ):
        """
        Initialize configuration with environment variables and defaults.

        Args:
            base_dir (Optional[Path]): Root for the log and export directories.
            fuel (Optional[int]): Maximum reduction steps per run.
            node_budget (Optional[int]): Maximum nets explored by a reduction graph.
            seed (Optional[int]): Seed for random choices and property runs.
            cases (Optional[int]): Number of cases per property run.
            search_depth (Optional[int]): Depth bound of derivation search.
            universe_size (Optional[int]): Number of candidate cut types in search.
            auto_export (Optional[bool]): Export the trace after every step.
            default_encoding (Optional[str]): Encoding for file operations.
        """
        self.base_dir = base_dir or Path(_env('BASE_DIR', str(get_project_root()))).resolve()
        self.fuel = _int_setting(fuel, 'FUEL', 10_000)
        self.node_budget = _int_setting(node_budget, 'NODE_BUDGET', 5_000)
        self.seed = _int_setting(seed, 'SEED', 0)
        self.cases = _int_setting(cases, 'CASES', 500)
        self.search_depth = _int_setting(search_depth, 'SEARCH_DEPTH', 6)
        self.universe_size = _int_setting(universe_size, 'UNIVERSE_SIZE', 48)

        auto_export_env = _env('AUTO_EXPORT', 'false').lower()
        self.auto_export = auto_export if auto_export is not None else auto_export_env in ('true', '1')

        self.default_encoding = default_encoding or _env('DEFAULT_ENCODING', 'utf-8')

    @property
    def log_dir(self) -> Path:
        return Path(_env('LOG_DIR', str(self.base_dir / "logs"))).resolve()

    @property
    def log_file(self) -> Path:
        return Path(_env('LOG_FILE', str(self.log_dir / "workbench.log"))).resolve()

    @property
    def export_dir(self) -> Path:
        """
        Get the export directory path.

        Traces, reduction graphs and property-run summaries are written here
        as CSV files.

        Returns:
            Path: The export directory path.
        """
        return Path(_env('EXPORT_DIR', str(self.base_dir / "exports"))).resolve()

    def validate(self) -> None:
        """
        Validate configuration settings.

        Raises:
            ConfigurationError: If fuel is negative or a budget is not positive.
        """
        if self.fuel < 0:
            raise ConfigurationError("fuel must not be negative")
        if self.node_budget <= 0:
            raise ConfigurationError("node_budget must be positive")
        if self.cases <= 0:
            raise ConfigurationError("cases must be positive")
        if self.search_depth <= 0:
            raise ConfigurationError("search_depth must be positive")
        if self.universe_size <= 0:
            raise ConfigurationError("universe_size must be positive")
