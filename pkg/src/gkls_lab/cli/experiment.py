"""Experiment configuration: schema, config-file loading and provenance output."""

import json
import logging
from pathlib import Path
from typing import Any, Literal, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .. import __version__
from ..config import settings
from ..storage import write_text_atomic
from ..suites import Difficulty

logger = logging.getLogger(__name__)

VERSION_FILE = "VERSION"


class OptimizerChoice(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    params: dict[str, Any] = Field(default_factory=dict)


def _split_list(value: Any) -> Any:
    """Accept a JSON list or a comma-separated string."""
    if not isinstance(value, str):
        return value
    text = value.strip()
    if text.startswith("["):
        return json.loads(text)
    return [item.strip() for item in text.split(",") if item.strip()]


class ExperimentConfig(BaseModel):
    """
    Everything that determines an experiment's outputs.

    Defaults come from the ambient settings; the resolved instance is written
    next to the results so a re-run never depends on the environment.
    """

    model_config = ConfigDict(extra="forbid")

    # Suite selection
    class_id: Optional[int] = None
    dim: Optional[int] = Field(default=None, ge=1)
    difficulty: Optional[Difficulty] = None
    mod: bool = False
    suite_size: Optional[int] = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0)

    # Benchmark protocol
    optimizers: list[OptimizerChoice] = Field(default_factory=lambda: [OptimizerChoice(name="random_search")])
    budget_multiplier: int = Field(default_factory=lambda: settings.budget_multiplier, ge=1)
    stop_error: float = Field(default_factory=lambda: settings.stop_error, ge=0.0)
    targets: bool = True
    ecdf_grid_size: int = Field(default_factory=lambda: settings.ecdf_grid_size, ge=2)
    repetitions: int = Field(default=1, ge=1)

    # Landscape analysis
    ela: bool = False
    sample_multiplier: int = Field(default_factory=lambda: settings.sample_multiplier, ge=1)
    corr_threshold: float = Field(default_factory=lambda: settings.corr_threshold, gt=0.0, le=1.0)
    normalization: Literal["minmax", "zscore"] = "minmax"
    pca_components: int = Field(default_factory=lambda: settings.pca_components, ge=1)
    tsne_perplexity: float = Field(default_factory=lambda: settings.tsne_perplexity, gt=0.0)
    tsne_iterations: int = Field(default_factory=lambda: settings.tsne_iterations, ge=250)
    imports: list[Path] = Field(default_factory=list)

    # Execution
    out: Path = Path("out")
    threads: int = Field(default_factory=lambda: settings.default_threads, ge=1)

    @field_validator("optimizers", mode="before")
    @classmethod
    def _parse_optimizers(cls, value: Any) -> Any:
        value = _split_list(value)
        if isinstance(value, list):
            return [{"name": item} if isinstance(item, str) else item for item in value]
        return value

    @field_validator("imports", mode="before")
    @classmethod
    def _parse_imports(cls, value: Any) -> Any:
        return _split_list(value)

    @property
    def has_selection(self) -> bool:
        return self.class_id is not None or self.difficulty is not None or self.mod

    def suite_name(self) -> str:
        """Name of the selected suite, without materializing it."""
        if self.class_id is not None:
            return f"class{self.class_id}"
        if self.has_selection and self.dim is None:
            raise ValueError("extended and mod suites need --dim")
        if self.mod:
            return f"mod{self.dim}"
        if self.difficulty is not None:
            return f"{self.difficulty.value}{self.dim}"
        raise ValueError("no suite selected: use --class, --difficulty with --dim, or --mod with --dim")


def load_config_file(path: Path) -> dict[str, Any]:
    """
    Read a ``KEY=VALUE`` experiment file.

    Keys are field names in any case; empty values are left out so the
    defaults apply.
    """
    raw = dotenv_values(path)
    return {key.lower(): value for key, value in raw.items() if value not in (None, "")}


def resolve_config(path: Optional[Path], overrides: dict[str, Any]) -> ExperimentConfig:
    """Merge the config file (if any) with command-line overrides; flags win."""
    data = load_config_file(path) if path is not None else {}
    data.update({key: value for key, value in overrides.items() if value is not None})
    config = ExperimentConfig.model_validate(data)
    logger.debug(f"Resolved config: {config.model_dump(mode='json')}")
    return config


def dump_config(config: ExperimentConfig) -> str:
    lines = []
    for key, value in config.model_dump(mode="json").items():
        if value is None:
            continue
        if isinstance(value, (list, dict)):
            lines.append(f"{key.upper()}='{json.dumps(value, sort_keys=True)}'")
        elif isinstance(value, bool):
            lines.append(f"{key.upper()}={'true' if value else 'false'}")
        else:
            lines.append(f"{key.upper()}={value}")
    return "\n".join(lines) + "\n"


def write_provenance(config: ExperimentConfig, command: str, directory: Path) -> None:
    """Write ``<command>.config.env`` and ``VERSION`` into ``directory``."""
    write_text_atomic(directory / f"{command}.config.env", dump_config(config))
    write_text_atomic(directory / VERSION_FILE, f"gkls-lab {__version__}\n")
