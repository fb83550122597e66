from .machine import Continue, Done, Failed, load_program, seed_call, step
from .run import Outcome, run, run_source

__all__ = [
    "Continue", "Done", "Failed", "Outcome", "load_program", "run", "run_source",
    "seed_call", "step",
]
