"""
Centralized configuration for the Galois black-box toolkit.
All parameters in one place, overridable via environment variables.
"""
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field
from typing import Literal
import yaml
from pathlib import Path

# Load YAML config if exists
def _load_yaml_config() -> dict:
    """Load config.yaml if it exists, else return empty dict."""
    config_path = Path(__file__).parent.parent.parent / "config.yaml"
    if config_path.exists():
        with open(config_path, 'r') as f:
            return yaml.safe_load(f) or {}
    return {}

_yaml = _load_yaml_config()

class Settings(BaseSettings):
    """Application configuration with environment variable support."""
    
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )
    
    # === Prime searches (T0 / T1 / T2) ===
    search_norm_cap: int = Field(
        default=_yaml.get('search', {}).get('norm_cap', 1_000_000),
        ge=2,
        description="Largest prime norm any search may reach before SearchExhausted"
    )
    search_degree_one_only: bool = Field(
        default=_yaml.get('search', {}).get('degree_one_only', False),
        description="Skip inert primes of norm p^2 over Q(i)"
    )
    
    # === Analysis ===
    analysis_k_max: int = Field(
        default=_yaml.get('analysis', {}).get('k_max', 20),
        ge=1,
        description="Deepest level k examined by max_trivial_level"
    )
    
    # === Oracle ===
    oracle_memoize: bool = Field(
        default=_yaml.get('oracle', {}).get('memoize', True),
        description="Cache oracle answers per prime (answers are unchanged)"
    )
    
    # === Logging ===
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default=_yaml.get('logging', {}).get('level', "INFO"),
        description="Root log level for the CLI"
    )
    audit_enabled: bool = Field(
        default=_yaml.get('logging', {}).get('audit_enabled', False),
        description="Write oracle queries and runs to audit.jsonl"
    )
    audit_log_dir: str = Field(
        default=_yaml.get('logging', {}).get('audit_log_dir', "logs"),
        description="Directory holding audit.jsonl"
    )


settings = Settings()
