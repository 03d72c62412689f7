"""Magic state factory models keyed by (kind, d1, d2).

The shipped table ``data/factories_v1.csv`` is generated by
:func:`generate_table` and is the source the estimator reads at run time.
Only one point is pinned by published numbers: a CCZ factory at level-1
distance 17 and level-2 distance 27 has a 15x8 logical-qubit footprint,
produces a state every 140 surface code cycles (14 factories keep up with a
10 us reaction time) and fails with probability 0.064 / 3e9 per state. Other
entries extrapolate from that anchor:

* per-state error: a floor plus a distance-suppressed term that drops a decade
  per +2 in d2 and a factor ``D1_SUPPRESSION`` per +2 in d1;
* footprint: physical extent grows like (d1 + 1), measured in level-2 tiles of
  side (d2 + 1);
* cycles per state: proportional to d1 + d2.

T factories feed four T states per Toffoli, each at half the CCZ volume per
state, and have a far lower error floor. They are low fidelity by design.
"""

from __future__ import annotations

import csv
import functools
import io
import math
from dataclasses import dataclass
from importlib import resources

from .abstract_cost import FactoryKind

TABLE_VERSION = "v1"
TABLE_FILE = f"factories_{TABLE_VERSION}.csv"
COLUMNS = ("factory_kind", "d1", "d2", "error_per_state", "footprint_w", "footprint_h",
           "cycles_per_state")

ANCHOR_D1 = 17
ANCHOR_D2 = 27
ANCHOR_CCZ_ERROR = 0.064 / 3e9
ANCHOR_FOOTPRINT = (15, 8)
ANCHOR_CYCLES = 140

# Level-2 8T-to-CCZ distillation of perfectly protected level-1 T states:
# 28 * (35 p^3)^2 at p = 1e-3.
CCZ_ERROR_FLOOR = 28 * (35 * 1e-3**3) ** 2
T_ERROR_FLOOR = 1e-20
D1_SUPPRESSION = 2.5

STATES_PER_TOFFOLI = {FactoryKind.CCZ: 1, FactoryKind.T: 4}

D1_RANGE = range(15, 24, 2)
D2_RANGE = range(25, 52, 2)


class UnsupportedDistance(KeyError):
    def __str__(self):
        return str(self.args[0])


@dataclass(frozen=True)
class FactoryModel:
    kind: FactoryKind
    d1: int
    d2: int
    error_per_state: float
    footprint_w: float
    footprint_h: float
    cycles_per_state: float

    @property
    def states_per_toffoli(self) -> int:
        return STATES_PER_TOFFOLI[self.kind]

    @property
    def error_per_toffoli(self) -> float:
        return self.error_per_state * self.states_per_toffoli

    def factories_needed(self, cycle_time: float, reaction_time: float) -> int:
        """Fewest factories delivering one Toffoli's worth of states per reaction time."""
        demand = self.states_per_toffoli * self.cycles_per_state * cycle_time / reaction_time
        return max(1, math.ceil(demand - 1e-9))


def _model_entry(kind: FactoryKind, d1: int, d2: int) -> FactoryModel:
    suppression = D1_SUPPRESSION ** ((ANCHOR_D1 - d1) / 2) * 10.0 ** (-(d2 - ANCHOR_D2) / 2)
    tile_scale = (d1 + 1) / (ANCHOR_D1 + 1) * (ANCHOR_D2 + 1) / (d2 + 1)
    cycles = ANCHOR_CYCLES * (d1 + d2) / (ANCHOR_D1 + ANCHOR_D2)
    w, h = ANCHOR_FOOTPRINT
    if kind is FactoryKind.CCZ:
        error = CCZ_ERROR_FLOOR + (ANCHOR_CCZ_ERROR - CCZ_ERROR_FLOOR) * suppression
    else:
        per_state = ANCHOR_CCZ_ERROR / STATES_PER_TOFFOLI[kind]
        error = T_ERROR_FLOOR + per_state * suppression
        cycles /= 2
    return FactoryModel(kind, d1, d2, error, w * tile_scale, h * tile_scale, cycles)


def generate_table() -> list[FactoryModel]:
    return [_model_entry(kind, d1, d2) for kind in FactoryKind for d1 in D1_RANGE for d2 in D2_RANGE]


def format_table(models) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    for m in models:
        writer.writerow([m.kind.value, m.d1, m.d2, f"{m.error_per_state:.6e}",
                         f"{m.footprint_w:.6f}", f"{m.footprint_h:.6f}", f"{m.cycles_per_state:.6f}"])
    return out.getvalue()


def parse_table(text: str) -> dict[tuple[FactoryKind, int, int], FactoryModel]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != COLUMNS:
        raise ValueError(f"factory table header {reader.fieldnames} != {list(COLUMNS)}")
    table = {}
    for row in reader:
        model = FactoryModel(
            kind=FactoryKind(row["factory_kind"]),
            d1=int(row["d1"]),
            d2=int(row["d2"]),
            error_per_state=float(row["error_per_state"]),
            footprint_w=float(row["footprint_w"]),
            footprint_h=float(row["footprint_h"]),
            cycles_per_state=float(row["cycles_per_state"]),
        )
        table[model.kind, model.d1, model.d2] = model
    return table


@functools.lru_cache(maxsize=None)
def load_table(path: str | None = None) -> dict[tuple[FactoryKind, int, int], FactoryModel]:
    """Load a factory table; the packaged one when ``path`` is None."""
    if path is None:
        text = resources.files("shorcost.data").joinpath(TABLE_FILE).read_text()
    else:
        with open(path, newline="") as f:
            text = f.read()
    return parse_table(text)


def factory_model(kind: FactoryKind, d1: int, d2: int, table=None) -> FactoryModel:
    table = load_table() if table is None else table
    try:
        return table[kind, d1, d2]
    except KeyError:
        raise UnsupportedDistance(
            f"no {kind.value} factory entry for distances d1={d1}, d2={d2}"
        ) from None
