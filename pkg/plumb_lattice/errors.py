class PlumbLatticeError(Exception):
    pass

class FractionParseError(PlumbLatticeError):
    def __init__(self, token: str, reason: str):
        super().__init__(f"Cannot parse fraction {token!r}: {reason}")

class BudgetExceeded(PlumbLatticeError):
    def __init__(self, limit: int, spent: int):
        self.limit = limit
        self.spent = spent
        super().__init__(f"Node budget exhausted: {spent} nodes spent, limit {limit}")

class EmbeddingMismatch(PlumbLatticeError):
    def __init__(self, u: int, v: int, expected: int, got: int):
        super().__init__(f"Rows {u},{v} pair to {got}, expected {expected}")

class CertificateError(PlumbLatticeError):
    pass

class DeskScaleExceeded(PlumbLatticeError):
    def __init__(self, what: str, value: int, cap: int):
        super().__init__(f"{what}={value} is above the desk-scale cap {cap}; raise the cap explicitly to run it")
