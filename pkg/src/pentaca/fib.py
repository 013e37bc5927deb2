"""Fibonacci numeration and the sector tree of the pentagrid.

Each of the five sectors of the pentagrid is spanned by a tree generated by
the node rules B -> BW and W -> BWW: black nodes carry two sons (black then
white, left to right), white nodes three (black then two white).  The root
is white.  Nodes are numbered level by level, left to right, starting at 1.

Navigation (kind, sons, father, preferred son) is done arithmetically on
Zeckendorf representations; the explicit level-word expansion is kept as a
test oracle, never as the implementation.
"""

from bisect import bisect_right

BLACK = "B"
WHITE = "W"

# f_0 = f_1 = 1, f_{k+1} = f_k + f_{k-1}.  The table comfortably exceeds the
# required range (node numbers up to f_41); exact ints throughout.
MAX_FIB_INDEX = 92


def _build_fib():
    fibs = [1, 1]
    for _ in range(2, MAX_FIB_INDEX + 1):
        fibs.append(fibs[-1] + fibs[-2])
    return tuple(fibs)


_FIB = _build_fib()
_EVEN_FIB = _FIB[0::2]  # f_0, f_2, f_4, ...  (level n starts at f_{2n})

# Hard bound on node numbers: everything below needs fib indices <= 92 for
# sons of nodes at the deepest supported level.
MAX_NODE = _FIB[84] - 1


class FibRangeError(ValueError):
    """Index or node number outside the supported coordinate range."""


def fib(k):
    """Return f_k with f_0 = f_1 = 1."""
    if not 0 <= k <= MAX_FIB_INDEX:
        raise FibRangeError(f"fibonacci index {k} outside 0..{MAX_FIB_INDEX}")
    return _FIB[k]


def _check_node(nu):
    if nu < 1:
        raise ValueError(f"node number must be >= 1, got {nu}")
    if nu > MAX_NODE:
        raise FibRangeError(f"node number {nu} beyond supported range")


def level_of(nu):
    """Level of node nu in its sector tree (root is level 0)."""
    _check_node(nu)
    # level n spans [f_2n, f_{2n+2} - 1]
    return bisect_right(_EVEN_FIB, nu) - 1


def level_first(n):
    """Number of the leftmost node on level n."""
    if n < 0:
        raise ValueError("level must be >= 0")
    return fib(2 * n)


def level_last(n):
    """Number of the rightmost node on level n."""
    if n < 0:
        raise ValueError("level must be >= 0")
    return fib(2 * n + 2) - 1


def level_size(n):
    """Number of nodes on level n of a white-rooted tree: f_{2n+1}."""
    if n < 0:
        raise ValueError("level must be >= 0")
    return fib(2 * n + 1)


def zeckendorf_indices(n):
    """Greedy decomposition of n over f_1, f_2, ...; descending indices.

    The greedy choice yields the unique representation with no two adjacent
    indices, which is also the one with the most digits.
    """
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    if n > MAX_NODE + 2:
        raise FibRangeError(f"{n} beyond supported numeration range")
    out = []
    k = bisect_right(_FIB, n, lo=1) - 1
    while n:
        while _FIB[k] > n:
            k -= 1
        out.append(k)
        n -= _FIB[k]
        k -= 2  # no adjacent Fibonacci numbers in a greedy decomposition
    return out


def fib_rep(n):
    """Zeckendorf digit string of n, most significant digit first."""
    idx = zeckendorf_indices(n)
    width = idx[0]
    digits = ["0"] * width
    for k in idx:
        digits[width - k] = "1"
    return "".join(digits)


def fib_value(digits):
    """Value of a Fibonacci digit string (inverse of fib_rep)."""
    if not digits or digits[0] != "1":
        raise ValueError(f"malformed digit string {digits!r}")
    if "11" in digits:
        raise ValueError(f"adjacent ones in digit string {digits!r}")
    width = len(digits)
    total = 0
    for pos, d in enumerate(digits):
        if d == "1":
            total += fib(width - pos)
        elif d != "0":
            raise ValueError(f"bad digit {d!r} in {digits!r}")
    return total


def kind_of(nu):
    """Kind of node nu: BLACK or WHITE.

    A node is black exactly when its Zeckendorf representation has an odd
    number of trailing zeros (equivalently, its smallest Fibonacci index is
    even).  The root is white.
    """
    _check_node(nu)
    if nu == 1:
        return WHITE
    smallest = zeckendorf_indices(nu)[-1]
    return BLACK if smallest % 2 == 0 else WHITE


def preferred_son(nu):
    """The son whose representation is [nu] with "00" appended.

    That is the black son of a black node and the middle son of a white one.
    """
    _check_node(nu)
    return sum(fib(k + 2) for k in zeckendorf_indices(nu))


def sons(nu):
    """Sons of nu in left-to-right order (2 if black, 3 if white)."""
    p = preferred_son(nu)
    if kind_of(nu) == BLACK:
        return [p, p + 1]
    return [p - 1, p, p + 1]


def father(nu):
    """Father of nu, or None for the root (whose father is the central tile)."""
    _check_node(nu)
    if nu == 1:
        return None
    idx = zeckendorf_indices(nu)
    smallest = idx[-1]
    if smallest >= 3:
        # representation ends in "00": nu is a preferred son
        return sum(fib(k - 2) for k in idx)
    if smallest == 1:
        # ends in "01": rightmost white son, nu = preferred + 1
        return sum(fib(k - 2) for k in idx[:-1])
    # ends in "10": black son of a white node, nu + 1 is the preferred son
    return sum(fib(k - 2) for k in zeckendorf_indices(nu + 1))


def expand_levels(depth):
    """Yield the level kind-words of a white-rooted tree, levels 0..depth.

    Pure substitution oracle (B -> BW, W -> BWW); used by tests to certify
    the arithmetic navigation, intentionally naive.
    """
    word = WHITE
    for _ in range(depth + 1):
        yield word
        word = "".join("BW" if c == BLACK else "BWW" for c in word)
