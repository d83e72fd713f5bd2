from .template_codec import parse_template, serialize_template
from .template_store import TemplateStore

__all__ = ["TemplateStore", "parse_template", "serialize_template"]
