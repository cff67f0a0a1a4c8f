"""Configuration management using Pydantic Settings."""

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Ambient configuration loaded from environment variables.

    These are defaults only. Every value that influences an experiment's
    output is copied into the resolved experiment config, which is what gets
    written next to the results.
    """

    # Logging
    log_level: str = "INFO"
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - [%(run)s] %(message)s"

    # Worker pool
    default_threads: int = Field(default=1, ge=1)

    # Benchmark protocol
    budget_multiplier: int = Field(
        default=50_000,
        description="Evaluations granted per dimension for one optimizer run",
    )
    stop_error: float = Field(
        default=1e-8,
        description="Best error at or below which a run counts as solved",
    )
    ecdf_grid_size: int = 101

    # Landscape analysis
    sample_multiplier: int = Field(
        default=250,
        description="Uniform samples drawn per dimension for feature computation",
    )
    corr_threshold: float = 0.95
    pca_components: int = 7
    tsne_perplexity: float = 30.0
    tsne_iterations: int = 1000

    model_config = {
        "env_prefix": "GKLS_LAB_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": False,
        "extra": "ignore",
    }


# Singleton instance
settings = Settings()
