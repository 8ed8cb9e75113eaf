from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    project_name: str = "sheafnet"

    # Root log level for the CLI; reports go to stdout, logs to stderr
    log_level: str = "WARNING"

    # SHEAFNET_REPORT_SEED: seed for randomized helpers reached from the CLI (random disk networks)
    report_seed: int = 0

    # Payload defaults used when the CLI flags are omitted
    default_protocol: str = "forward_everything"
    default_packet_dim: int = Field(default=1, ge=1)
    default_queue_len: int = Field(default=2, ge=2)

    # Transmitter-set enumeration visits 2^N subsets; refuse above this many nodes
    max_enumeration_nodes: int = 20

    # Adds generated_at to reports. Off so that reports are byte-identical across runs.
    include_timestamps: bool = False

    model_config = SettingsConfigDict(
        env_prefix="SHEAFNET_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="forbid",
    )


settings = Settings()
