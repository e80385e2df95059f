import logging
import threading
from typing import List, Optional

from hyperon import MeTTa

from coxma.errors import UnsupportedTypeError
from coxma.knowledge import initialize_coxeter_knowledge

logger = logging.getLogger(__name__)

FAMILIES = ("A", "B", "D")
CHART_TYPES = ("A2", "B2")


class CoxeterFacts:
    def __init__(self, metta_instance: MeTTa):
        self.metta = metta_instance
        self._lock = threading.Lock()

    def _lookup(self, relation: str, subject: str):
        query_str = f'!(match &self ({relation} {subject} $value) $value)'
        with self._lock:
            results = self.metta.run(query_str)
        return results[0][0].get_object().value if results and results[0] else None

    def _require_family(self, family: str) -> str:
        family = family.strip().upper()
        if family not in FAMILIES:
            raise UnsupportedTypeError(f"unsupported family {family!r}; expected one of {', '.join(FAMILIES)}")
        return family

    def min_rank(self, family: str) -> int:
        family = self._require_family(family)
        return int(self._lookup("min_rank", family))

    def check_rank(self, family: str, rank: int) -> None:
        lowest = self.min_rank(family)
        if rank < lowest:
            raise UnsupportedTypeError(f"family {family} needs rank >= {lowest} (got {rank})")

    def coxeter_number(self, family: str, rank: int) -> int:
        """h from the stored linear rule for the family."""
        family = self._require_family(family)
        self.check_rank(family, rank)
        slope = int(self._lookup("h_slope", family))
        offset = int(self._lookup("h_offset", family))
        return slope * rank + offset

    def classical_exponents(self, family: str, rank: int) -> List[int]:
        family = self._require_family(family)
        self.check_rank(family, rank)
        start = int(self._lookup("exponent_start", family))
        step = int(self._lookup("exponent_step", family))
        count = rank + int(self._lookup("exponent_count_offset", family))
        exponents = [start + step * i for i in range(count)]
        extra = self._lookup("exponent_extra_offset", family)
        if extra is not None:
            exponents.append(rank + int(extra))
        return sorted(exponents)

    def chart_record(self, chart_type: str) -> dict:
        chart_type = chart_type.strip().upper()
        if chart_type not in CHART_TYPES:
            raise UnsupportedTypeError(f"unsupported chart type {chart_type!r}; expected one of {', '.join(CHART_TYPES)}")
        return {
            "family": self._lookup("chart_family", chart_type),
            "variables": self._lookup("chart_variables", chart_type).split(),
            "forms": [f.strip() for f in self._lookup("chart_forms", chart_type).split(";")],
            "p1": self._lookup("chart_p1", chart_type),
            "p2": self._lookup("chart_p2", chart_type),
        }


_facts: Optional[CoxeterFacts] = None
_facts_lock = threading.Lock()


def default_facts() -> CoxeterFacts:
    """Process-wide knowledge space, built on first use."""
    global _facts
    with _facts_lock:
        if _facts is None:
            logger.debug("Initializing Coxeter knowledge space")
            metta = MeTTa()
            initialize_coxeter_knowledge(metta)
            _facts = CoxeterFacts(metta)
        return _facts
