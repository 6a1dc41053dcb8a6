"""Toolkit configuration and settings management."""

import logging
from dotenv import load_dotenv
from msnumber.config.utils import get_bool_env, get_int_env, get_str_env

# Load environment variables
load_dotenv()

LOG_LEVEL = get_str_env("LOG_LEVEL", "INFO", choices=("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"))
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logger = logging.getLogger(__name__)


class LimitsConfig:
    """Size caps guarding exponential-time and exponential-memory operations."""
    
    def __init__(self):
        self.brute_force_max_n = get_int_env("MSN_BRUTE_FORCE_MAX_N", 24)
        self.brute_force_chunk = get_int_env("MSN_BRUTE_FORCE_CHUNK", 1 << 16, minimum=1)
        self.amplitude_max_n = get_int_env("MSN_AMPLITUDE_MAX_N", 20)
        self.spectrum_max_n = get_int_env("MSN_SPECTRUM_MAX_N", 20)
        self.orbit_max_n = get_int_env("MSN_ORBIT_MAX_N", 12)
        # Matrix dimensions accepted by gf2core and the graph container
        self.matrix_max_dim = get_int_env("MSN_MATRIX_MAX_DIM", 1 << 15)


class VerificationConfig:
    """Randomised checking configuration."""
    
    def __init__(self):
        self.seed = get_int_env("MSN_SEED", 2009)
        self.cert_exhaustive_max_n = get_int_env("MSN_CERT_EXHAUSTIVE_MAX_N", 12)
        self.cert_random_samples = get_int_env("MSN_CERT_RANDOM_SAMPLES", 10_000)
        # Above this order the weight-2 probes (n(n-1)/2 of them) are skipped
        self.cert_pair_max_n = get_int_env("MSN_CERT_PAIR_MAX_N", 512)
        self.samples_per_order = get_int_env("MSN_VERIFY_SAMPLES", 1000, minimum=1)


class ClassifyConfig:
    """Stream classification configuration."""
    
    def __init__(self):
        self.representatives = get_int_env("MSN_REPRESENTATIVES", 3)
        self.show_progress = get_bool_env("MSN_SHOW_PROGRESS", False)


class AppConfig:
    """Main toolkit configuration."""
    
    def __init__(self):
        self.limits = LimitsConfig()
        self.verification = VerificationConfig()
        self.classify = ClassifyConfig()
        self.log_level = LOG_LEVEL
        
        logger.debug(
            f"Configuration loaded - brute-force cap: {self.limits.brute_force_max_n}, "
            f"seed: {self.verification.seed}, representatives: {self.classify.representatives}"
        )


def configure_logging(level: str = LOG_LEVEL, stream=None):
    """Configure root logging once for an entry point."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        stream=stream,
    )


# Global configuration instance
config = AppConfig()
