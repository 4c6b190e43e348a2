"""SO(3) quantum representations at odd levels and Turaev-Viro trace sums."""

from fslinks.tqft.level import Level, admissible, colors, quantum_integer
from fslinks.tqft.rep import Coloring, EmptyBlockSpaceError, rep_matrix, rep_trace
from fslinks.tqft.tv import TVSeries, slope_series, tv_braided_link
from fslinks.tqft.oracle import tl_bracket_oracle, oracle_rep_traces, oracle_tv_braided_link

__all__ = [
    "Level", "admissible", "colors", "quantum_integer",
    "Coloring", "EmptyBlockSpaceError", "rep_matrix", "rep_trace",
    "TVSeries", "slope_series", "tv_braided_link",
    "tl_bracket_oracle", "oracle_rep_traces", "oracle_tv_braided_link",
]
