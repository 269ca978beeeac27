"""Exception hierarchy shared by all comporank modules.

Every error carries the identifiers needed to locate the problem (matrix
cell, node id, component id), so the CLI can print actionable messages and
the HTTP layer can build structured 422 payloads.
"""


class ComporankError(Exception):
    """Base class for all domain errors."""

    def payload(self) -> dict:
        """Structured representation used by the HTTP error responses."""
        out = {"error": _snake(type(self).__name__), "detail": str(self)}
        for key, value in vars(self).items():
            if not key.startswith("_"):
                out[key] = value
        return out


def _snake(name: str) -> str:
    return "".join("_" + c.lower() if c.isupper() else c for c in name).lstrip("_")


# --- quality model -----------------------------------------------------------

class DimensionMismatch(ComporankError):
    def __init__(self, node_id, detail):
        self.node_id = node_id
        super().__init__(f"matrix for node '{node_id}': {detail}")


class NonReciprocalMatrix(ComporankError):
    def __init__(self, node_id, row, col, detail):
        self.node_id = node_id
        self.row = row
        self.col = col
        super().__init__(f"matrix for node '{node_id}', cell ({row},{col}): {detail}")


class OutOfScaleEntry(ComporankError):
    def __init__(self, node_id, row, col, value):
        self.node_id = node_id
        self.row = row
        self.col = col
        self.value = value
        super().__init__(
            f"matrix for node '{node_id}', cell ({row},{col}): entry {value} "
            f"outside the judgment scale [1/9, 9]"
        )


class InconsistentMatrix(ComporankError):
    def __init__(self, node_id, consistency_ratio, threshold):
        self.node_id = node_id
        self.consistency_ratio = consistency_ratio
        self.threshold = threshold
        super().__init__(
            f"matrix for node '{node_id}' has CR {consistency_ratio:.4f} "
            f"above threshold {threshold}"
        )


class MissingWeights(ComporankError):
    def __init__(self, node_id, detail="no comparison matrix and no direct child weights"):
        self.node_id = node_id
        super().__init__(f"node '{node_id}': {detail}")


class DuplicateId(ComporankError):
    def __init__(self, duplicate):
        self.duplicate = duplicate
        super().__init__(f"duplicate id '{duplicate}'")


# --- catalog -----------------------------------------------------------------

class ParseError(ComporankError):
    def __init__(self, location, detail):
        self.location = location
        super().__init__(f"{location}: {detail}")


class UnknownCriterion(ComporankError):
    def __init__(self, component_id, leaf_id):
        self.component_id = component_id
        self.leaf_id = leaf_id
        super().__init__(
            f"component '{component_id}' rates unknown criterion '{leaf_id}'"
        )


class RatingOutOfRange(ComporankError):
    def __init__(self, component_id, leaf_id, value, scale_max):
        self.component_id = component_id
        self.leaf_id = leaf_id
        self.value = value
        self.scale_max = scale_max
        super().__init__(
            f"component '{component_id}', criterion '{leaf_id}': rating {value} "
            f"outside (0, {scale_max}]"
        )


# --- scoring -----------------------------------------------------------------

class EmptyCandidateSet(ComporankError):
    def __init__(self):
        super().__init__("candidate set is empty")


class DomainError(ComporankError):
    pass


class MissingLeaf(ComporankError):
    def __init__(self, leaf_id, component_id=None):
        self.leaf_id = leaf_id
        self.component_id = component_id
        where = f" for component '{component_id}'" if component_id else ""
        super().__init__(f"criterion '{leaf_id}' has no rating{where}")


class CapExceeded(ComporankError):
    def __init__(self, component_id, quantity, value, cap):
        self.component_id = component_id
        self.quantity = quantity
        self.value = value
        self.cap = cap
        super().__init__(
            f"component '{component_id}': {quantity} {value} outside (0, {cap}]"
        )
