__all__ = ["runner"]
