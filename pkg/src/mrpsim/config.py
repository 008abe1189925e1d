from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings


class Config(BaseSettings):
    """Configuration class for the simulator."""

    model_config = {
        "case_sensitive": False,
        "env_file": ".env",
        "use_enum_values": True,
        "extra": "ignore",
    }

    # Output Configuration
    out_dir: Path = Field(
        default=Path("./mrpsim-out"),
        alias="MRP_SIM_OUT",
        description="Directory receiving CSV telemetry and plot data",
    )
    csv_digits: int = Field(
        default=9,
        ge=1,
        le=17,
        alias="MRP_SIM_CSV_DIGITS",
        description="Significant digits of decimal values in telemetry files",
    )

    # Logging Configuration
    log_level: str = Field(default="info", alias="MRP_SIM_LOG_LEVEL")

    # Run Configuration
    parallel_compare: bool = Field(
        default=True,
        alias="MRP_SIM_PARALLEL",
        description="Run the two controllers of a comparison on a thread pool",
    )


@lru_cache()
def get_config() -> Config:
    """Get the configuration singleton."""
    return Config()


config = get_config()
