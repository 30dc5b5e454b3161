import sys

from netmimo.modules.log import get_verbose_logger
from netmimo.modules.file_utils import OutputError
from netmimo.tools.common import EXIT_CONFIG, EXIT_IO, EXIT_OK

from .args import parse_args
from .markdown import MarkdownEmitter, ReportError
from .results_data import ResultsData, ResultsDataError


def main(argv=None):
    """
    1. Load summary, mean rate CDF and config echo from a results directory
    2. Render template with Jinja2 using the loaded data
    3. Save report.md (or print it)
    """

    argv = argv if argv is not None else sys.argv[1:]
    args = parse_args(argv)
    log = get_verbose_logger(__name__, args.verbose)

    log.info("[*] netmimo report tool")

    try:
        results = ResultsData.from_directory(args.results)
    except OutputError as e:
        log.error("wasn't able to load results: %s", e)
        return EXIT_IO
    except ResultsDataError as e:
        log.error("bad results: %s", e)
        return EXIT_CONFIG
    log.verbose1("Loaded %d summary rows from %s", len(results.summary), args.results)

    emitter = MarkdownEmitter()
    emitter.assign_results(results)
    emitter.set_template_path(args.templates, args.template_name)

    try:
        data = emitter.render()
    except ReportError as e:
        log.error("%s", e)
        return EXIT_CONFIG

    if args.output == "-":
        print(data)
        return EXIT_OK

    try:
        with open(args.output, "wt", encoding="utf-8") as f:
            print(data, file=f)
    except OSError as e:
        log.error("wasn't able to save report '%s': %s", args.output, e)
        return EXIT_IO

    log.info("[+] Report saved to %s", args.output)
    return EXIT_OK
