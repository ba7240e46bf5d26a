import os
from pathlib import Path
from dataclasses import dataclass, field

from dotenv import load_dotenv

load_dotenv()


def _default_output_root() -> Path:
    env_dir = os.environ.get("DUNKL_SPECTRA_OUTPUT_DIR")
    if env_dir:
        return Path(env_dir).expanduser()
    return Path.home() / ".dunkl-spectra" / "runs"


@dataclass
class OutputPaths:
    """Centralized configuration for run artifacts"""

    output_root: Path = field(default_factory=_default_output_root)
    checkpoints: Path = None

    def __post_init__(self):
        """Ensure all paths are absolute"""
        if self.checkpoints is None:
            self.checkpoints = Path(self.output_root) / "checkpoints"
        for field_name in self.__dataclass_fields__:
            field_value = getattr(self, field_name)
            if isinstance(field_value, Path):
                setattr(self, field_name, field_value.expanduser().resolve())

    def create_directories(self):
        """Create all output directories if they don't exist"""
        for field_name in self.__dataclass_fields__:
            field_value = getattr(self, field_name)
            if isinstance(field_value, Path):
                field_value.mkdir(parents=True, exist_ok=True)

    def checkpoint_path(self, command: str, tag: str, suffix: str = "json") -> Path:
        """Path of the checkpoint file for one parameter set of a sweep"""
        safe_tag = "".join(ch if ch.isalnum() or ch in "-_.=" else "_" for ch in tag)
        return self.checkpoints / command / f"{safe_tag}.{suffix}"


OUTPUT_PATHS = OutputPaths()
