"""Loidreau rank-metric encryption and its structural attacks.

Keys, ciphertexts and recovered keys are plain dicts in the JSON layout used
by the ``rankcrypt`` command-line tool.
"""

import json

from . import _core
from ._core import DecodingError, FormatError

__all__ = [
    "DecodingError",
    "FormatError",
    "attack",
    "decrypt",
    "decrypt_recovered",
    "distinguish",
    "encrypt",
    "identities",
    "keygen",
    "verify",
]


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def keygen(q, m, n, k, lam, seed):
    """Return (public_key, secret_key) as dicts."""
    pub, sec = _core.keygen(q, m, n, k, lam, seed)
    return json.loads(pub), json.loads(sec)


def encrypt(pub, msg=None, seed=0):
    """Encrypt a list of hex strings; a random message is drawn from seed when msg is None."""
    return json.loads(_core.encrypt(_dump(pub), msg, seed))


def decrypt(sec, ct):
    return _core.decrypt(_dump(sec), _dump(ct))


def decrypt_recovered(recovered, pub, ct):
    return _core.decrypt_recovered(_dump(recovered), _dump(pub), _dump(ct))


def distinguish(pub, lam=0):
    return _core.distinguish(_dump(pub), lam)


def attack(pub, lam=0):
    """Recover an alternate secret key, or None when the attack fails."""
    out = _core.attack(_dump(pub), lam)
    return None if out is None else json.loads(out)


def verify(pub, recovered):
    return _core.verify(_dump(pub), _dump(recovered))


def identities(q):
    return dict(_core.identities(q))
