"""Turing machine simulation on the edge memory of a constructed line."""

from netcon.tm.layout import (
    InteractionLog,
    LineLayout,
    cell_address,
    cell_tokens,
    line_order,
    move_head,
    partition_line,
    slot_state,
    slot_symbols,
)
from netcon.tm.machine import (
    Move,
    TMDescription,
    check_inputs,
    load_tm,
    parse_tm,
    read_tm,
)
from netcon.tm.simulator import (
    PipelineResult,
    Simulator,
    TMOutcome,
    TMResult,
    compute_predicate_end_to_end,
    random_assignment,
    read_cell,
    run_tm,
    write_cell,
)

__all__ = [
    # Machines
    "Move",
    "TMDescription",
    "parse_tm",
    "read_tm",
    "load_tm",
    "check_inputs",
    # Layout
    "LineLayout",
    "InteractionLog",
    "line_order",
    "partition_line",
    "cell_address",
    "cell_tokens",
    "move_head",
    "slot_state",
    "slot_symbols",
    # Simulation
    "Simulator",
    "TMOutcome",
    "TMResult",
    "PipelineResult",
    "read_cell",
    "write_cell",
    "run_tm",
    "compute_predicate_end_to_end",
    "random_assignment",
]
