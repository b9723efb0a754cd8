__all__ = ["builtin", "frobenius", "products", "theta"]
