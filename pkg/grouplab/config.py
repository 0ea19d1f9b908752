from pydantic_settings import BaseSettings
from functools import lru_cache
from typing import List


class Settings(BaseSettings):
    # Logging / environment
    log_level: str = "INFO"
    app_env: str = "development"

    # Group construction
    associativity_check_bound: int = 64
    associativity_samples: int = 1000

    # Enumeration caps
    involution_order_bound: int = 16
    max_involutions: int = 512
    idempotent_bound: int = 10**6
    unit_bound: int = 10**7
    tuple_bound: int = 10**8
    nilpotency_bound: int = 32

    # Verification runs
    default_primes: List[int] = [3, 5]
    max_order: int = 16
    axiom_samples: int = 1000
    random_seed: int = 20240611
    workers: int = 1
    report_schema_version: int = 1

    class Config:
        env_file = ".env"
        env_prefix = "GROUPLAB_"


@lru_cache()
def get_settings():
    return Settings()
