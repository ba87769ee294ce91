"""Templates to render reports as SVG."""
from functools import lru_cache
from typing import Any

import jinja2


@lru_cache(maxsize=1)
def get_render_environment() -> jinja2.Environment:
    loader = jinja2.PackageLoader("metaparadox.reporters")
    return jinja2.Environment(
        loader=loader,
        autoescape=jinja2.select_autoescape(enabled_extensions=("svg",)),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )


def render_template(name: str, **context: Any) -> str:
    env = get_render_environment()
    return env.get_template(name).render(**context)
