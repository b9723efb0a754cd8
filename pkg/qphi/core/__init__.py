__all__ = ["series", "errors", "registry", "cache", "config"]
