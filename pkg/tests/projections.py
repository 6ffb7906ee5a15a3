"""Terminal-state projections shared by the bisimulation checks."""

from collections import Counter

from coapdialect import props as P
from coapdialect.dialect import UD
from coapdialect.model import Attacker
from coapdialect.search import FINAL, search


def without_attacker(sys):
    return sys._replace(agents=tuple(a for a in sys.agents if not isinstance(a, Attacker)))


def terminal_projection(sys, dialected):
    """Distinct terminal states after stripping wrappers and the attacker."""
    r = search(sys, P.TRUE, FINAL, dialected=dialected)
    return {without_attacker(UD(r.state(k))) for k in range(r.count)}


def resources(states):
    return Counter(tuple((a.eid, a.rsrcs) for a in s.agents) for s in states)
