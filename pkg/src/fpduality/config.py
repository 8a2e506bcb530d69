"""Run-wide resource limits, overridable from the CLI."""

DEFAULT_DEGREE_BUDGET = 60
DEFAULT_SIZE_CAP = 4096


class EngineConfig:
    def __init__(self):
        self.degree_budget = DEFAULT_DEGREE_BUDGET
        self.size_cap = DEFAULT_SIZE_CAP

    def reset(self):
        self.degree_budget = DEFAULT_DEGREE_BUDGET
        self.size_cap = DEFAULT_SIZE_CAP


config = EngineConfig()
