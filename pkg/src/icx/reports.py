from __future__ import annotations

from logging import getLogger
from typing import Dict, Sequence

from jinja2 import Template

from .conjugacy import BackSubstitutionTrace
from .geometry.fourier_motzkin import IntegerFeasibility
from .result import CommandResult

logger = getLogger(__name__)

KEY_VALUE_TEMPLATE = """
{% for key, value in payload.items() -%}
{{ key }}: {{ value }}
{% endfor %}
"""

TRACE_TEMPLATE = """
elimination order: {{ order | join(', ') }}

| Stage | Variable | I+ | I0 | I- | Lower | Upper | Chosen |
| ----- | -------- | -- | -- | -- | ----- | ----- | ------ |
{% for step in trace.steps -%}
| {{ step.stage }} | p{{ step.variable + 1 }} | {{ step.upper_rows }} | {{ step.zero_rows }} | {{ step.lower_rows }} | {{ step.lower }} | {{ step.upper }} | {{ step.chosen if step.chosen is not none else '-' }} |
{% endfor %}
"""

PROOF_TEMPLATE = """
integer search over {{ order | join(', ') }}: {{ 'feasible' if search.feasible else 'no integer point' }} ({{ search.explored }} candidates)
{% if search.real_point -%}
real relaxation point: ({{ search.real_point | join(', ') }})
{% endif -%}
{% for line in search.proof -%}
  {{ line }}
{% endfor %}
"""

RESULT_TEMPLATE = """
{{ body }}
{% for title, section in sections.items() %}
{{ title }}:
{{ section }}
{% endfor %}
"""


def render_key_values(payload: Dict[str, str]) -> str:
    return Template(KEY_VALUE_TEMPLATE).render(payload=payload).strip()


def _variables(order: Sequence[int]) -> list:
    return [f"p{j + 1}" for j in order]


def render_trace(trace: BackSubstitutionTrace) -> str:
    """Markdown table of the back-substitution, one row per variable."""

    return Template(TRACE_TEMPLATE).render(trace=trace, order=_variables(trace.order)).strip()


def render_proof(search: IntegerFeasibility) -> str:
    real_point = [str(c) for c in search.real_point] if search.real_point else None
    context = {**search.model_dump(), "real_point": real_point}
    return Template(PROOF_TEMPLATE).render(search=context, order=_variables(search.order)).strip()


def render_result(result: CommandResult) -> str:
    body = render_key_values({"status": result.status, **result.payload})
    return Template(RESULT_TEMPLATE).render(body=body, sections=result.sections).strip() + "\n"
