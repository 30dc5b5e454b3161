from typing import Optional

from netmimo.modules.log import getLogger

log = getLogger(__name__)

from jinja2 import Environment, FileSystemLoader, TemplateError

from .results_data import ResultsData


class ReportError(Exception):
    """Exception class for errors while rendering reports"""


class MarkdownEmitter:
    """
    Markdown report generator.
    Uses Jinja2
    """

    def __init__(self):
        self.results: Optional[ResultsData] = None
        self.template_dir: Optional[str] = None
        self.template_name: Optional[str] = None
        self.jinja_env: Optional[Environment] = None

    def assign_results(self, results: ResultsData):
        self.results = results

    def set_template_path(self, template_dir: str, template_name: str):
        self.template_dir = template_dir
        self.template_name = template_name
        self.jinja_env = Environment(
            loader=FileSystemLoader(self.template_dir),
            extensions=["jinja2.ext.loopcontrols"],
            keep_trailing_newline=True,
        )

    def render(self) -> str:
        if self.results is None or self.jinja_env is None:
            raise ReportError("results and template must be set before rendering")

        log.trace("rendering self.template_name=%s", self.template_name)
        try:
            template = self.jinja_env.get_template(self.template_name)
            return template.render(data=self.results.to_data_dict())
        except TemplateError as e:
            raise ReportError(f"while rendering template '{self.template_name}': {e}") from e
