class Verdict:
    """
    Outcome of an axiom check.

    Failure is a value, not an exception. A verdict is truthy iff it passed.

    Attributes:
        ok (bool): whether every checked identity held
        axiom (str): name of the first violated identity (None on pass)
        witness (tuple): basis indices at which it failed
        detail (str): free-form description
    """

    def __init__(self, ok, axiom=None, witness=(), detail=""):
        self.ok = bool(ok)
        self.axiom = axiom
        self.witness = tuple(witness)
        self.detail = detail

    @classmethod
    def passed(cls, detail=""):
        return cls(True, detail=detail)

    @classmethod
    def failed(cls, axiom, witness=(), detail=""):
        return cls(False, axiom, witness, detail)

    def __bool__(self):
        return self.ok

    def __eq__(self, other):
        if not isinstance(other, Verdict):
            return NotImplemented
        return (self.ok, self.axiom, self.witness) == (other.ok, other.axiom, other.witness)

    def __hash__(self):
        return hash((self.ok, self.axiom, self.witness))

    def to_dict(self):
        out = {"ok": self.ok}
        if not self.ok:
            out["axiom"] = self.axiom
            out["witness"] = list(self.witness)
            if self.detail:
                out["detail"] = self.detail
        return out

    def __repr__(self):
        if self.ok:
            return "Verdict(pass)"
        return f"Verdict(fail {self.axiom} at {self.witness})"


def first_failure(*verdicts):
    "The first failing verdict, or a pass if all passed."
    for v in verdicts:
        if not v:
            return v
    return Verdict.passed()
