"""
Configuration settings for hopfkit.
Loads environment variables and provides the size caps used by every suite.
"""
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore"
    )

    # Application
    APP_NAME: str = "hopfkit"
    VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

    # Bialgebra side
    MAX_BIALGEBRA_DIM: int = 12
    FUSION_DIM_BOUND: int = 2
    ENTWINING_DIM_BOUND: int = 3
    MODULE_DIM_BOUND: int = 3
    WITNESS_DIM_BOUND: int = 3
    WITNESS_SEARCH_CAP: int = 6561

    # Finite-set and presheaf side
    MAX_SKELETON: int = 4
    MONAD_LAW_CAP: int = 65536
    ALGEBRA_CARRIER_BOUND: int = 3
    MAX_POSET_SIZE: int = 4
    MAX_PRESHEAF_COMPONENT: int = 2
    EXPONENTIAL_CACHE_LIMIT: int = 256

    # Reports and bundled inputs
    REPORT_FORMAT: str = "text"
    CORPUS_DIR: str = "./corpus"


# Global settings instance
settings = Settings()
