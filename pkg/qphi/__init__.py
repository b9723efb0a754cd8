__all__ = ["core", "builders", "verify", "runtime"]

__version__ = "0.1.0"
# Bumped whenever a constructor changes its output; part of every cache key.
ENGINE_VERSION = f"qphi-{__version__}"
