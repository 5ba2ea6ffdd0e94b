"""Exception hierarchy shared by every module."""


class FlowDecError(Exception):
    """Base class for all errors raised by flowdec."""


class GraphError(FlowDecError):
    pass


class CycleDetected(GraphError):
    pass


class MultipleSources(GraphError):
    pass


class MultipleSinks(GraphError):
    pass


class DanglingVertex(GraphError):
    def __init__(self, vertex):
        super().__init__(f"vertex {vertex} is not on any s-t path")
        self.vertex = vertex


class InvalidVertex(GraphError):
    pass


class UnknownEdge(GraphError):
    pass


class FlowError(FlowDecError):
    pass


class ConservationViolated(FlowError):
    def __init__(self, vertex, inflow=None, outflow=None):
        msg = f"conservation violated at vertex {vertex}"
        if inflow is not None:
            msg += f" (in {inflow}, out {outflow})"
        super().__init__(msg)
        self.vertex = vertex


class NegativeFlow(FlowError):
    def __init__(self, edge):
        super().__init__(f"negative flow on edge {edge}")
        self.edge = edge


class EmptyFlow(FlowError):
    pass


class Infeasible(FlowDecError):
    pass


class ParityAssertionFailed(FlowDecError):
    pass


class BudgetExceeded(FlowDecError):
    pass


class PreconditionViolated(FlowDecError):
    def __init__(self, op, edge):
        super().__init__(f"{op} not allowed on edge {edge}")
        self.op = op
        self.edge = edge


class InvalidParameters(FlowDecError):
    pass
