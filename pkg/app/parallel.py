import logging

from joblib import Parallel, delayed


def map_ordered(fn, items, jobs=1):
    """Apply fn to every item and return the results in submission order.

    jobs == 1 runs in-process; anything else goes through joblib workers.
    Results never depend on jobs because merging is left to the caller, in order.
    """
    items = list(items)
    if jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logging.debug(f"Dispatching {len(items)} work units to {jobs} workers")
    return Parallel(n_jobs=jobs)(delayed(fn)(item) for item in items)
