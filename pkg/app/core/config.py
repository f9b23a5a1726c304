from pydantic_settings import BaseSettings
from pydantic import Field

class Settings(BaseSettings):
    # Verification Settings
    MAX_DEGREE: int = Field(default=3, ge=0)
    MODE: str = Field(default="exhaustive")
    SEED: int = Field(default=20260401, ge=0)
    SAMPLE_SIZE: int = Field(default=64, ge=1)

    # Size caps (desk-scale instances)
    ORBIT_MAX_M: int = Field(default=7, ge=2)
    EXTENSIONAL_MAX_M: int = Field(default=5, ge=2)

    # Output Settings
    OUTPUT_FORMAT: str = Field(default="text")
    LOG_LEVEL: str = Field(default="WARNING")

    class Config:
        # Load environment variables from a .env file
        env_file = ".env"

        # Allow extra environment variables
        extra = "allow"

settings = Settings()
