from django.utils.translation import gettext_lazy as _

# Decider that produced a ControllabilityVerdict.
METHOD_LIN = "lin"
METHOD_FLOW = "flow"

# Approximation guarantee attached to a selection.
BOUND_DELTA = "delta"
BOUND_DELTA_MINUS_ONE = "delta_minus_one"
BOUND_EXACT = "exact"
BOUNDS = [
    (BOUND_DELTA, _("Within Δ of the optimum")),
    (BOUND_DELTA_MINUS_ONE, _("Within Δ-1 of the optimum (B(Ā) has a perfect matching)")),
    (BOUND_EXACT, _("Optimal (D(Ā) is irreducible)")),
]

# What a selection run minimised.
OBJECTIVE_COST = "cost"
OBJECTIVE_CARDINALITY = "cardinality"
OBJECTIVE_OBSERVABILITY = "observability"
OBJECTIVES = [
    (OBJECTIVE_COST, _("Minimum cost input selection")),
    (OBJECTIVE_CARDINALITY, _("Minimum number of inputs")),
    (OBJECTIVE_OBSERVABILITY, _("Minimum cost output selection")),
]

# Flow network vertex roles.
ROLE_SOURCE = "s"
ROLE_SINK = "t"
ROLE_SCC = "N"
ROLE_PRIMED_STATE = "xp"
ROLE_STATE = "x"
ROLE_INPUT = "u"
ROLE_PRIMED_INPUT = "up"

# Instance generator families.
FAMILY_ERDOS = "erdos"
FAMILY_CHAIN = "chain"
FAMILY_CYCLE = "cycle"
FAMILY_DECOUPLED_DIAGONAL = "decoupled-diagonal"
FAMILY_BLOCK = "block"
GENERATOR_FAMILIES = (FAMILY_ERDOS, FAMILY_CHAIN, FAMILY_CYCLE, FAMILY_DECOUPLED_DIAGONAL, FAMILY_BLOCK)

# Graphs that export_dot can render.
EXPORT_DIGRAPH = "digraph"
EXPORT_BIPARTITE = "bipartite"
EXPORT_FLOWNET = "flownet"
EXPORT_CONDENSATION = "condensation"
EXPORT_KINDS = (EXPORT_DIGRAPH, EXPORT_BIPARTITE, EXPORT_FLOWNET, EXPORT_CONDENSATION)
