"""Port-level diagram assembly.

A crossing has four slots numbered counterclockwise.  Strands pass
straight through a crossing (slot ``s`` to slot ``s + 2``), and one of the
two slot pairs is the under-strand.  Edges are links between an exit port
of one crossing and an entry port of another.  Orientation is recovered by
walking each component from a known exit port, so constructions only have
to get the planar wiring right.
"""

from collections import OrderedDict

from .errors import InconsistentDiagram


def through(port):
    c, s = port
    return (c, (s + 2) % 4)


class DiagramBuilder:
    def __init__(self):
        self.under02 = []
        self.removed = set()
        self.link = {}
        self.starts = []
        self.free = []

    def crossing(self, under02=True):
        self.under02.append(bool(under02))
        return len(self.under02) - 1

    def connect(self, exit_port, entry_port):
        """Join an exit port to an entry port (order is informational)."""
        for p in (exit_port, entry_port):
            if p in self.link:
                raise InconsistentDiagram(f"port {p} connected twice")
        self.link[exit_port] = entry_port
        self.link[entry_port] = exit_port

    def disconnect(self, port):
        other = self.link.pop(port)
        del self.link[other]
        return other

    def start(self, key, exit_port):
        self.starts.append((key, exit_port))

    def free_loop(self, key):
        self.free.append(key)

    def remove_crossing(self, c):
        self.removed.add(c)

    def build(self, dedupe=False):
        """Walk every component and emit PD data.

        Returns ``(crossings, signs, components, exit_labels)`` where
        ``exit_labels`` maps each surviving exit port to its new edge label.
        """
        visited = set()
        label = 0
        slot_label = {}
        slot_in = {}
        comps = {}
        exit_labels = {}
        for key, start in self.starts:
            if start in visited:
                if dedupe:
                    continue
                raise InconsistentDiagram(f"component {key} started twice")
            if key in comps:
                raise InconsistentDiagram(f"duplicate component key {key}")
            edges = []
            p = start
            while True:
                if p in visited:
                    raise InconsistentDiagram("strand walk revisits a port")
                visited.add(p)
                q = self.link.get(p)
                if q is None:
                    raise InconsistentDiagram(f"dangling port {p}")
                label += 1
                edges.append(label)
                slot_label[p] = label
                slot_in[p] = False
                slot_label[q] = label
                slot_in[q] = True
                exit_labels[p] = label
                p = through(q)
                if p == start:
                    break
            comps[key] = edges
        for key in self.free:
            if key in comps:
                raise InconsistentDiagram(f"duplicate component key {key}")
            label += 1
            comps[key] = [label]

        live = [c for c in range(len(self.under02)) if c not in self.removed]
        for c in live:
            for s in range(4):
                if (c, s) not in slot_label:
                    raise InconsistentDiagram(f"crossing {c} slot {s} not on any walked strand")

        crossings = []
        signs = []
        for c in live:
            pair = (0, 2) if self.under02[c] else (1, 3)
            s0 = pair[0] if slot_in[(c, pair[0])] else pair[1]
            if slot_in[(c, (s0 + 2) % 4)]:
                raise InconsistentDiagram(f"crossing {c}: under-strand has two inputs")
            labels = tuple(slot_label[(c, (s0 + k) % 4)] for k in range(4))
            j_in = slot_in[(c, (s0 + 1) % 4)]
            l_in = slot_in[(c, (s0 + 3) % 4)]
            if j_in == l_in:
                raise InconsistentDiagram(f"crossing {c}: over-strand orientation conflict")
            crossings.append(labels)
            signs.append(1 if l_in else -1)
        ordered = OrderedDict(sorted(comps.items(), key=lambda kv: kv[0]))
        return crossings, signs, list(ordered.values()), exit_labels
