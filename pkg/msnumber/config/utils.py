"""Utility functions for configuration."""

import os


def get_bool_env(key: str, default: bool = False) -> bool:
    """Get boolean value from environment variable.
    
    Args:
        key: Environment variable name
        default: Default boolean value if not set
        
    Returns:
        Boolean value
    """
    value = os.getenv(key)
    if value is None:
        return default
    return value.lower() in ("true", "1", "yes", "on")


def get_int_env(key: str, default: int, minimum: int = 0) -> int:
    """Get integer value from environment variable.
    
    Args:
        key: Environment variable name
        default: Default integer value if not set
        minimum: Smallest accepted value; anything lower falls back to default
        
    Returns:
        Integer value
    """
    value = os.getenv(key)
    if value is None:
        return default
    try:
        parsed = int(value)
    except ValueError:
        return default
    return parsed if parsed >= minimum else default


def get_str_env(key: str, default: str, choices: tuple = ()) -> str:
    """Get string value from environment variable, optionally restricted to choices."""
    value = os.getenv(key)
    if value is None:
        return default
    value = value.strip()
    if choices and value.upper() not in choices:
        return default
    return value
