"""Luby restart schedule."""


def luby(i: int) -> int:
    """Return the i-th term (1-based) of the Luby sequence 1, 1, 2, 1, 1, 2, 4, ...

    Args:
        i: Position in the sequence, at least 1.

    Returns:
        The term, a power of two.

    """
    if i < 1:
        raise ValueError("the Luby sequence starts at 1")
    x = i - 1
    size, seq = 1, 0
    while size < x + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != x:
        size = (size - 1) >> 1
        seq -= 1
        x %= size
    return 1 << seq


def restart_limits(unit: int, count: int) -> list[int]:
    """Conflict limits of the first `count` restarts for a given unit."""
    return [unit * luby(i) for i in range(1, count + 1)]
