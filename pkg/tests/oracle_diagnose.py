"""Independent transcription of the result-interpretation procedure.

Kept deliberately flat and separate from the production localizer; the
equivalence suite runs both over fuzzed logs and demands exact agreement.
"""

from __future__ import annotations


def oracle_diagnose(l1, l2, l3, provenance, transformer_names, scope):
    """Returns (guilty | None, fss) for a failure log.

    l1, l2: sets of (operation, element); l3: creator -> count;
    provenance: element -> (creators frozenset, transformers frozenset);
    scope: "union" or "l1".
    """
    l1_ops = set()
    for (op, obj) in l1:
        l1_ops.add(op)
    union_ops = set()
    for (op, obj) in l1:
        union_ops.add(op)
    for (op, obj) in l2:
        union_ops.add(op)

    if scope == "union":
        counted = union_ops
    else:
        counted = l1_ops

    if len(counted) > 1:
        positive = []
        for cc in sorted(l3.keys()):
            if l3[cc] > 0:
                positive.append(cc)
        if len(positive) > 0:
            if len(positive) == 1:
                return positive[0], frozenset(positive)
            else:
                return None, frozenset(positive)
        fss = set()
        for ncc in sorted(transformer_names):
            l_ncc = []
            for (op, obj) in l2:
                if op == ncc:
                    l_ncc.append(obj)
            kept = []
            for obj in l_ncc:
                creators, transformers = provenance[obj]
                if transformers == frozenset([ncc]) and len(creators) == 1:
                    kept.append(obj)
            if len(kept) > 0:
                fss.add(ncc)
        if len(fss) == 1:
            for x in fss:
                return x, frozenset(fss)
        return None, frozenset(fss)
    else:
        if len(l1) == 0 and len(l2) == 0:
            return None, frozenset()
        if scope == "union":
            for x in union_ops:
                return x, frozenset()
        if len(l1_ops) == 1:
            for x in l1_ops:
                return x, frozenset(union_ops - {x})
        return None, frozenset(union_ops)
