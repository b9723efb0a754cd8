__all__ = ["checks", "claims", "expressions", "ledger", "report", "scan"]
