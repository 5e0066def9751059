# app/utils/seeding.py
import hashlib
import struct

SEED_MASK = (1 << 64) - 1
_SCHEME = b"dip-seed-v1"


def derive_seed(master_seed: int, *indices: int) -> int:
    """
    Детерминированный 64-битный seed для (master_seed, индексы)

    Схема: BLAKE2b (digest 8 байт) от префикса версии и упакованных
    little-endian uint64 значений; результат читается как little-endian.
    Не зависит от порядка выполнения, поэтому годится для параллельных
    испытаний.
    """
    values = (master_seed,) + tuple(indices)
    if any(v < 0 for v in values):
        raise ValueError(f"Seed components must be nonnegative, got {values}")
    payload = _SCHEME + b"".join(struct.pack("<Q", v & SEED_MASK) for v in values)
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "little")
