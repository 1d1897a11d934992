import types
from typing import Dict, Any


class Metric:
    """
    A Metric is anything about a run that should be persisted for later review:
    configurations, solve reports, audit outcomes, the run manifest.
    A Metric may contain other Metric's.
    """

    def to_json(self) -> Dict[str, Any]:
        """
        Returns a JSON-serializable version of this object.
        Override this if you hold something MetricJsonEncoder cannot encode.
        """
        return {
            k: v for k, v in vars(self).items()
            if (
                not k.startswith('_') and
                not isinstance(v, types.MethodType)
            )
        }
