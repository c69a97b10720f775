import json

VERDICTS = ("match", "mismatch", "ambiguous")
AMBIGUOUS_WARNING = "reduced_part_possibly_reducible"


class ReportContext:
    """
    Accumulates the results of one CLI run into the JSON report
    """
    def __init__(self, mode, seed=None, trials=None):
        self.mode = mode
        self.seed = seed
        self.trials = trials
        self.ml_degree = None
        self.method = None
        self.profile = None
        self.oracles = []
        self.skipped = []
        self.warnings = []
        self.verdict = None
        self.error = None

    def set_ml_degree(self, value, method):
        self.ml_degree = value
        self.method = method
        if value is not None and value < 0:
            self.add_warning("negative_ml_degree")

    def update_profile(self, profile):
        """Record the map profile and carry its warnings into the report"""
        self.profile = profile.to_dict()
        for warning in profile.warnings:
            self.add_warning(warning)

    def add_oracle(self, entry):
        self.oracles.append(entry)

    def skip_oracle(self, name, reason):
        self.skipped.append({"name": name, "reason": reason})

    def add_warning(self, warning):
        if warning not in self.warnings:
            self.warnings.append(warning)

    def set_error(self, error):
        self.error = error.to_dict()

    def computed_values(self):
        values = [] if self.ml_degree is None else [self.ml_degree]
        values.extend(o["count"] for o in self.oracles)
        return values

    def compute_verdict(self):
        """
        match iff every computed value is equal; differing values are
        ambiguous only under the reducible-component warning
        """
        values = self.computed_values()
        if all(v is not None for v in values) and len(set(values)) <= 1:
            self.verdict = "match"
        elif AMBIGUOUS_WARNING in self.warnings:
            self.verdict = "ambiguous"
        else:
            self.verdict = "mismatch"
        return self.verdict

    def to_dict(self):
        data = {"mode": self.mode}
        if self.seed is not None:
            data["seed"] = self.seed
        if self.trials is not None:
            data["trials"] = self.trials
        if self.ml_degree is not None:
            data["ml_degree"] = self.ml_degree
            data["method"] = self.method
        if self.profile is not None:
            data["profile"] = self.profile
        data["oracles"] = self.oracles
        if self.skipped:
            data["skipped"] = self.skipped
        data["warnings"] = self.warnings
        if self.verdict is not None:
            data["verdict"] = self.verdict
        if self.error is not None:
            data["error"] = self.error
        return data

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)
