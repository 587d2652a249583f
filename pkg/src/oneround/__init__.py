"""One-round referee protocols on labelled graphs.

The main pieces:

* :mod:`oneround.graph` -- labelled graphs, degeneracy, exact oracles, generators
* :mod:`oneround.model` -- the referee model: protocols, transcripts, frugality
* :mod:`oneround.powersum` -- power-sum neighbourhood summaries and their decoder
* :mod:`oneround.degeneracy` -- reconstruction of bounded-degeneracy graphs
* :mod:`oneround.reductions` -- gadget reductions for square, diameter, triangle
"""

from .degeneracy import DegeneracyProtocol
from .graph import (
    INFINITE,
    EliminationOrder,
    LabelledGraph,
    degeneracy,
    degeneracy_order,
    diameter,
    gen_k_degenerate,
    gen_planar,
    has_square,
    has_triangle,
    parse_edge_list,
    write_edge_list,
)
from .model import (
    Message,
    OneRoundProtocol,
    Reconstruction,
    Rejection,
    Transcript,
    Verdict,
    frugality_report,
    run,
)
from .powersum import PowerSumSummary, decode, encode, deserialize, serialize
from .reductions import (
    build_gadget,
    count_square_free,
    delta_diameter,
    delta_square,
    delta_triangle,
    gadget_iff_check,
    oracle_decider,
)

__version__ = "0.1.0"
