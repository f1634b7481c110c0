import os
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

FOREST_CAP = 12
EXHAUSTIVE_MAX_N = 6
ZERO_TOLERANCE = 1e-8
INTERLACING_TOLERANCE = 1e-7
JACOBI_MAX_SWEEPS = 100
# float checks (interlacing, float nullity) only run up to this order
FLOAT_CHECK_MAX_N = 10
# the forest oracle inside verify_all and the sweeps stops here; direct calls use FOREST_CAP
ORACLE_CHECK_MAX_N = 8


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="NETLAP_", env_file=".env", extra="ignore")

    forest_cap: int = Field(default=FOREST_CAP, ge=1, description="largest order the forest oracle enumerates")
    exhaustive_max_n: int = Field(default=EXHAUSTIVE_MAX_N, ge=1, description="largest order for exhaustive sweeps")
    zero_tolerance: float = Field(default=ZERO_TOLERANCE, gt=0, description="relative zero threshold for float eigenvalues")
    interlacing_tolerance: float = Field(default=INTERLACING_TOLERANCE, gt=0, description="absolute slack in interlacing chains")
    jacobi_max_sweeps: int = Field(default=JACOBI_MAX_SWEEPS, ge=1, description="sweep cap of the rotation eigensolver")
    float_check_max_n: int = Field(default=FLOAT_CHECK_MAX_N, ge=1, description="largest order for float-based checks")
    oracle_check_max_n: int = Field(default=ORACLE_CHECK_MAX_N, ge=1, description="largest order for the forest checks in verify_all")
    workers: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1, description="default sweep worker count")


@lru_cache
def get_settings() -> Settings:
    return Settings()
