# src/gpfsums/reference/catalog.py
"""
Published reference values for self-checks.
Loads versioned JSON catalogs from config/reference/ and compares computed
values against printed decimals.
"""

import json
import logging
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import mpmath

from ..errors import ConfigurationError
from ..precision import DD, dd_to_decimal


logger = logging.getLogger(__name__)

CATALOG_SCHEMA_VERSION = 1
DEFAULT_CATALOG = "published_values"
DEFAULT_REFERENCE_DIR = Path(__file__).parent.parent.parent.parent / "config" / "reference"


def to_fraction(value: Any) -> Fraction:
    """Exact rational value of a DD, mpf, float, int, Fraction or decimal string"""
    if isinstance(value, DD):
        return value.to_fraction()
    if isinstance(value, mpmath.mpf):
        man, exp = value.man_exp
        return Fraction(man) * Fraction(2) ** exp
    return Fraction(value)


def last_digit_unit(printed: str) -> Fraction:
    """One unit in the last printed decimal place"""
    exponent = Decimal(printed).as_tuple().exponent
    return Fraction(10) ** exponent


@dataclass(frozen=True)
class Comparison:
    label: str
    printed: str
    computed: str
    difference: float
    tolerance: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "printed": self.printed,
            "computed": self.computed,
            "difference": self.difference,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


class ReferenceCatalog:
    """Versioned catalog of printed values"""

    def __init__(self, reference_dir: Optional[Union[str, Path]] = None, name: str = DEFAULT_CATALOG):
        """
        Initialize the catalog

        Args:
            reference_dir: directory holding <name>.json (default config/reference)
            name: catalog file name without extension
        """
        self.reference_dir = Path(reference_dir) if reference_dir else DEFAULT_REFERENCE_DIR
        self.name = name
        self.data = self._load_catalog(name)

    def _load_catalog(self, name: str) -> Dict[str, Any]:
        """Load catalog JSON from file"""
        catalog_file = self.reference_dir / f"{name}.json"

        if not catalog_file.exists():
            raise FileNotFoundError(f"Reference catalog not found: {catalog_file}")

        data = json.loads(catalog_file.read_text())
        version = data.get("schema_version")
        if version != CATALOG_SCHEMA_VERSION:
            logger.error(f"Catalog {catalog_file} has schema_version {version}")
            raise ConfigurationError(
                f"Reference catalog schema_version {version} is not {CATALOG_SCHEMA_VERSION}"
            )
        logger.debug(f"Loaded reference catalog {catalog_file}")
        return data

    def partial_sum_rows(self, series: str = "sa", include_slow: bool = False) -> List[Dict[str, Any]]:
        rows = self.data["partial_sums"][series]
        return [row for row in rows if include_slow or not row.get("slow", False)]

    def partial_sum_row(self, series: str, n: int) -> Optional[Dict[str, Any]]:
        for row in self.data["partial_sums"][series]:
            if row["n"] == n:
                return row
        return None

    def prime_zeta_rows(self, order: int) -> List[Dict[str, Any]]:
        return self.data["prime_zeta"].get(f"d{order}", [])

    def prime_zeta_row(self, order: int, s: int) -> Optional[Dict[str, Any]]:
        for row in self.prime_zeta_rows(order):
            if row["s"] == s:
                return row
        return None

    def constant(self, name: str) -> Dict[str, Any]:
        return self.data["constants"][name]

    def limit(self, kind: str) -> Dict[str, Any]:
        return self.data["limits"][kind]

    def asymptote(self) -> Dict[str, str]:
        return self.data["asymptote"]

    @staticmethod
    def compare(
        printed: str,
        value: Any,
        label: str = "",
        tolerance: Optional[str] = None,
        digits: int = 31,
    ) -> Comparison:
        """
        Pass when value lies within one unit of the last printed digit,
        or within an explicit tolerance when one is given
        """
        reference = Fraction(printed)
        computed = to_fraction(value)
        bound = Fraction(tolerance) if tolerance is not None else last_digit_unit(printed)
        difference = abs(computed - reference)
        shown = DD.of(computed)

        return Comparison(
            label=label,
            printed=printed,
            computed=dd_to_decimal(shown, digits),
            difference=float(difference),
            tolerance=float(bound),
            passed=difference <= bound,
        )

    def compare_row(self, row: Dict[str, Any], value: Any, label: str = "") -> Comparison:
        return self.compare(row["value"], value, label=label, tolerance=row.get("tolerance"))
