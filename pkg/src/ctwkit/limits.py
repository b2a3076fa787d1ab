"""Size limits for the exact solvers.

The defaults keep runtimes at desk scale; the CTWKIT_MAX_N environment
variable overrides both, and an explicit argument wins over everything.
"""

import os

TREEWIDTH_LIMIT = 20
CTW_LIMIT = 8


def resolve_limit(explicit: int | None, default: int) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("CTWKIT_MAX_N")
    if env is not None:
        return int(env)
    return default
