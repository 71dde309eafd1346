import os
from typing import Optional

from pydantic import BaseSettings, Field


class Settings(BaseSettings):
    seed: int = 0
    precision_bits: int = 64
    order: int = 16
    workers: int = 1
    tolerance: float = 1e-10
    psd_tolerance: float = 1e-9
    monomial_limit: int = 200_000
    output_path: Optional[str] = None
    max_labels: dict[str, int] = Field(
        default_factory=lambda: {
            "regge": 8,
            "orbit": 8,
            "oracle": 6,
            "u3": 5,
            "duality": 4,
            "dims": 5,
            "orthogonality": 8,
        }
    )
    samples: dict[str, int] = Field(
        default_factory=lambda: {
            "cm": 1000,
            "lemma": 500,
            "theorem": 500,
            "backlund": 20,
            "spherical": 500,
        }
    )
    exact_samples: int = 50

    class Config:
        env_prefix = "REGGELAB_"

    def __str__(self):
        return "\n".join(f"{key}={value}" for key, value in self.dict().items())


settings: Settings = Settings(_env_file=None)


def load_settings(root_dir: Optional[str]) -> Settings:
    global settings
    if root_dir:
        root_dir = os.path.abspath(os.path.expanduser(root_dir))
        env_file = os.path.join(root_dir, ".env")
    else:
        root_dir = os.path.abspath(".")
        env_file = ".env"
    settings = Settings(_env_file=env_file)

    if settings.output_path:
        settings.output_path = os.path.join(root_dir, os.path.expanduser(settings.output_path))
    return settings
