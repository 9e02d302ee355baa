import hashlib
import logging
import os
from typing import Optional, Sequence, Tuple

from hankelring.algebra.polynomials import ParseError, Polynomial
from hankelring.algebra.rings import MonomialOrder, PolynomialRing

logger = logging.getLogger(__name__)

CACHE_SUFFIX = ".gb"


class GroebnerCache:
    """
    Content-addressed disk cache of reduced Gröbner bases.

    Each entry is one text file named by the SHA-256 of the ring, the order and the sorted
    canonical texts of the generators. The file holds the reduced basis, one polynomial per line in
    the canonical text format. Entries are written atomically, so the directory can be shared by
    worker processes and deleted at any time.

    Parameters
    ----------
    directory : str
        Where entries live; created on first write.
    """

    def __init__(self, directory: str) -> None:
        self.directory = directory

    @staticmethod
    def key(ring: PolynomialRing, order: MonomialOrder, generators: Sequence[Polynomial]) -> str:
        texts = sorted(f.to_text() for f in generators if f)
        payload = "\n".join([str(ring), order.name] + texts)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + CACHE_SUFFIX)

    def load(
        self, ring: PolynomialRing, order: MonomialOrder, generators: Sequence[Polynomial]
    ) -> Optional[Tuple[Polynomial, ...]]:
        path = self._path(self.key(ring, order, generators))
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r") as f:
                lines = [line.strip() for line in f if line.strip()]
            return tuple(Polynomial.parse(line, ring) for line in lines)
        except (OSError, ParseError) as e:
            logger.warning(f"Ignoring unreadable cache entry {path}: {e}")
            return None

    def store(
        self,
        ring: PolynomialRing,
        order: MonomialOrder,
        generators: Sequence[Polynomial],
        basis: Sequence[Polynomial],
    ) -> str:
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(self.key(ring, order, generators))
        tmp_path = f"{path}.{os.getpid()}.tmp"
        with open(tmp_path, "w") as f:
            f.write("".join(g.to_text() + "\n" for g in basis))
        os.replace(tmp_path, path)
        return path

    def clear(self) -> int:
        """Delete every cache entry; return how many were removed."""
        if not os.path.isdir(self.directory):
            return 0
        removed = 0
        for name in os.listdir(self.directory):
            if name.endswith(CACHE_SUFFIX) or name.endswith(".tmp"):
                os.remove(os.path.join(self.directory, name))
                removed += 1
        logger.info(f"Removed {removed} entries from {self.directory}.")
        return removed
