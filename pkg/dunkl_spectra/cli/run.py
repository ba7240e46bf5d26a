"""Command dispatch for the dunkl-spectra command line.

Parameters arrive as key=value strings. A comma-separated value turns the
command into a sweep over the Cartesian product of all such values.
"""
import itertools
import json
import logging
import sys
import time
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..analysis import (
    as_region,
    fit_decay_exponent,
    fit_form_bound,
    fit_gautschi_constant,
    fit_lower_constant,
    fit_tprime_bound,
    fit_weierstrass_constant,
    region_verdict,
    theorem_V_hypotheses,
)
from ..coeffs import (
    MixedParams,
    TParams,
    chat_matrix,
    cprime_matrix,
    t_matrix_closed,
    t_matrix_quadrature,
    t_matrix_recursive,
)
from ..config import COEFFS, FITS, OUTPUT_PATHS, SPECTRA
from ..errors import DomainError
from ..spectra import (
    OperatorKind,
    OperatorSpec,
    ritz_spectrum,
    sandwich_check,
    sandwich_check_V,
    supersymmetric_pairing,
    witten_build,
    witten_spectrum,
)
from .verify import SCHEMA_VERSION, json_default, verify_all

logger = logging.getLogger(__name__)

COMMANDS = ("coeffs", "spectrum", "bounds", "regions", "witten", "verify-all")
OUTPUT_FORMATS = ("json", "csv")

# keys every command understands; the rest are per command
RUN_KEYS = {"format", "output", "seed", "checkpoint"}

INT_KEYS = {"N", "K", "trials", "p_max", "length", "count", "min_index", "seed", "checkpoint"}
TEXT_KEYS = {"kind", "family", "method", "set", "sign", "constant", "only", "format", "output"}

COMMAND_KEYS = {
    "coeffs": {"family", "method", "sigma", "tau", "theta", "u", "s", "N"},
    "spectrum": {f.name for f in fields(OperatorSpec)} | {"epsilon", "coarse"},
    "bounds": {"constant", "family", "sigma", "tau", "theta", "u", "s", "N", "K", "epsilon",
               "trials", "t", "p_max", "min_index"},
    "regions": {"set", "sigma", "tau", "theta", "alpha", "beta", "gamma", "delta", "u"},
    "witten": {"kappa", "u", "s", "mu", "sign", "length", "N", "count"},
    "verify-all": {"only"},
}

# never expanded into a sweep
LIST_KEYS = {"only", "coarse"}

REGION_COORDINATES = {
    "J": ("sigma", "tau"),
    "K": ("sigma", "tau", "theta"),
    "S": ("alpha", "beta", "gamma", "delta"),
}

METHOD_ALIASES = {"closed": "closed_form", "recursive": "recursion"}


def _convert(key: str, text: str):
    if key in TEXT_KEYS:
        return text
    try:
        number = float(text)
    except ValueError:
        raise DomainError(f"Parameter {key} expects a number, got {text!r}") from None
    if key in INT_KEYS:
        if not number.is_integer():
            raise DomainError(f"Parameter {key} expects an integer, got {text!r}")
        return int(number)
    return number


def parse_pairs(pairs: Sequence[str]) -> Dict[str, str]:
    """Split key=value words; later duplicates win."""
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise DomainError(f"Expected key=value, got {pair!r}")
        params[key.strip()] = value.strip()
    return params


@dataclass
class RunConfig:
    """One command invocation.

    Args:
        command: One of COMMANDS
        params: Command parameters as strings, comma lists for sweeps
        output_format: json or csv
        output_path: File to write; stdout for JSON when None
        seed: Seed of randomized fits
        checkpoint: Write one file per parameter set and skip existing ones
    """
    command: str
    params: Dict[str, str] = field(default_factory=dict)
    output_format: str = "json"
    output_path: Optional[Path] = None
    seed: int = FITS.seed
    checkpoint: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"Unknown command: {self.command} (expected one of {', '.join(COMMANDS)})")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(f"Unknown output format: {self.output_format}")
        unknown = sorted(set(self.params) - COMMAND_KEYS[self.command])
        if unknown:
            raise DomainError(f"Unknown parameters for {self.command}: {', '.join(unknown)}")
        if self.output_path is not None:
            self.output_path = Path(self.output_path)

    @classmethod
    def from_pairs(cls, command: str, pairs: Sequence[str]) -> "RunConfig":
        """Build from the key=value words after the command word."""
        params = parse_pairs(pairs)
        run = {key: params.pop(key) for key in RUN_KEYS & set(params)}
        return cls(
            command=command,
            params=params,
            output_format=run.get("format", "json"),
            output_path=Path(run["output"]) if "output" in run else None,
            seed=_convert("seed", run["seed"]) if "seed" in run else FITS.seed,
            checkpoint=bool(_convert("checkpoint", run["checkpoint"])) if "checkpoint" in run else False,
        )

    def parameter_sets(self) -> List[dict]:
        """Typed parameter sets, one per point of the sweep, in a fixed order."""
        keys = sorted(self.params)
        choices = []
        for key in keys:
            text = self.params[key]
            values = [text] if key in LIST_KEYS else [v for v in text.split(",") if v]
            if not values:
                raise DomainError(f"Parameter {key} has no value")
            choices.append([v if key in LIST_KEYS else _convert(key, v) for v in values])
        return [dict(zip(keys, combo)) for combo in itertools.product(*choices)]


def tag_for(params: dict) -> str:
    return "_".join(f"{key}={params[key]}" for key in sorted(params)) or "default"


def _require(params: dict, *names):
    missing = [name for name in names if name not in params]
    if missing:
        raise DomainError(f"Missing parameters: {', '.join(missing)}")


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise DomainError(f"Expected comma-separated integers, got {text!r}") from None


class Runner:
    """Executes a RunConfig and writes its artifacts.

    Args:
        debug: Attach wall-clock timings to every payload
    """

    def __init__(self, debug: bool = False):
        self.debug = debug
        self.handlers: Dict[str, Callable[[dict, RunConfig], Tuple[dict, bool, Optional[Callable]]]] = {
            "coeffs": self._coeffs,
            "spectrum": self._spectrum,
            "bounds": self._bounds,
            "regions": self._regions,
            "witten": self._witten,
            "verify-all": self._verify_all,
        }

    def run(self, config: RunConfig) -> int:
        """Run every parameter set; 0 when all reports pass, 1 otherwise."""
        logger.info("Starting %s", config.command)
        sets = config.parameter_sets()
        if config.output_format == "csv" and config.output_path is None and not config.checkpoint:
            raise DomainError("CSV output needs output=<path>")

        payloads, all_ok = [], True
        for params in sets:
            tag = tag_for(params)
            target = self._target(config, tag, len(sets))
            if config.checkpoint and target.exists():
                logger.info("Checkpoint %s exists, skipping", target)
                continue
            start = time.perf_counter()
            payload, ok, csv_writer = self.handlers[config.command](params, config)
            if self.debug:
                payload["seconds"] = round(time.perf_counter() - start, 3)
            all_ok &= ok
            if config.output_format == "csv":
                if csv_writer is None:
                    raise DomainError(f"The {config.command} command has no CSV output")
                csv_writer(target, params)
                logger.info("Wrote %s", target)
            elif target is not None:
                self._write_json(target, payload)
            else:
                payloads.append(payload)

        if payloads:
            document = payloads[0] if len(sets) == 1 else {"schema": SCHEMA_VERSION, "runs": payloads}
            if config.output_path is not None:
                self._write_json(config.output_path, document)
            else:
                sys.stdout.write(self._dumps(document) + "\n")
        logger.info("Finished %s: %s", config.command, "ok" if all_ok else "verification failed")
        return 0 if all_ok else 1

    def _target(self, config: RunConfig, tag: str, count: int) -> Optional[Path]:
        """File for one parameter set, or None when results are collected into one document."""
        suffix = config.output_format
        if config.checkpoint:
            return OUTPUT_PATHS.checkpoint_path(config.command, tag, suffix)
        if config.output_format == "csv" and config.output_path is not None:
            path = config.output_path
            return path if count == 1 else path.with_name(f"{path.stem}_{tag}{path.suffix or '.csv'}")
        return None

    @staticmethod
    def _dumps(document: dict) -> str:
        return json.dumps(document, indent=2, sort_keys=True, default=json_default)

    def _write_json(self, path: Path, document: dict):
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self._dumps(document) + "\n")
        logger.info("Wrote %s", path)

    def _coeffs(self, params: dict, config: RunConfig):
        family = params.get("family", "c")
        method = METHOD_ALIASES.get(params.get("method", "closed"), params.get("method", "closed"))
        N = params.get("N", COEFFS.default_order)
        if family in ("c", "d"):
            _require(params, "sigma", "u")
            tparams = TParams(params["sigma"], params["u"], params.get("s", 1.0))
            builders = {
                "closed_form": t_matrix_closed,
                "recursion": t_matrix_recursive,
                "quadrature": t_matrix_quadrature,
            }
            if method not in builders:
                raise DomainError(f"Unknown method for family {family}: {method}")
            matrix = builders[method](tparams, N, normalized=family == "d")
        elif family in ("chat", "cprime"):
            _require(params, "sigma", "tau", "theta")
            mixed = MixedParams(params["sigma"], params["tau"], params["theta"], params.get("s", 1.0))
            builder = chat_matrix if family == "chat" else cprime_matrix
            try:
                matrix = builder(mixed, N, method=method)
            except DomainError:
                raise
            except ValueError as e:
                raise DomainError(str(e)) from None
        else:
            raise DomainError(f"Unknown coefficient family: {family}")
        return matrix.to_json(), True, lambda path, _: matrix.to_csv(path)

    def _spectrum(self, params: dict, config: RunConfig):
        params = dict(params)
        epsilon = params.pop("epsilon", FITS.epsilon)
        coarse = params.pop("coarse", None)
        params.setdefault("kind", "U")
        try:
            kind = OperatorKind(params["kind"])
        except ValueError:
            raise DomainError(f"Unknown operator kind: {params['kind']}") from None
        if kind in (OperatorKind.WITTEN_LEN1, OperatorKind.WITTEN_LEN2):
            length = 1 if kind is OperatorKind.WITTEN_LEN1 else 2
            keys = COMMAND_KEYS["witten"] - {"length"}
            return self._witten({**{k: v for k, v in params.items() if k in keys}, "length": length}, config)

        spec = OperatorSpec(**params)
        orders = sorted(set(_int_list(coarse) + [spec.N])) if coarse else [spec.N]
        results = ritz_spectrum(spec, orders)
        result = results[-1]
        payload = {"schema": SCHEMA_VERSION, "operator": spec.to_json(), "spectrum": result.to_json()}
        ok = True
        if kind is OperatorKind.U:
            report = sandwich_check(spec, result, epsilon=epsilon)
        elif kind in (OperatorKind.V, OperatorKind.W):
            report = sandwich_check_V(spec, result, epsilon=epsilon)
        else:
            report = None
        if report is not None:
            payload["sandwich"] = report.to_json()
            ok = report.ok
        if len(results) > 1:
            payload["orders"] = [r.N for r in results]
        header = {key: params[key] for key in sorted(params)}
        return payload, ok, lambda path, _: result.to_csv(path, header=header)

    def _bounds(self, params: dict, config: RunConfig):
        constant = params.get("constant", "D")
        s = params.get("s", 1.0)
        epsilon = params.get("epsilon", FITS.epsilon)
        trials = params.get("trials", FITS.trials)
        if constant == "D":
            _require(params, "sigma", "u")
            report = fit_lower_constant(TParams(params["sigma"], params["u"], s), K=params.get("K", 200))
        elif constant == "C":
            _require(params, "sigma", "u")
            report = fit_form_bound(TParams(params["sigma"], params["u"], s), epsilon=epsilon, trials=trials,
                                    N=params.get("N", SPECTRA.default_order), seed=config.seed)
        elif constant == "E":
            _require(params, "sigma", "tau", "theta", "u")
            report = fit_tprime_bound(MixedParams(params["sigma"], params["tau"], params["theta"], s),
                                      params["u"], epsilon=epsilon, trials=trials,
                                      N=params.get("N", 64), seed=config.seed)
        elif constant == "omega":
            family = params.get("family", "d")
            N = params.get("N", COEFFS.default_order)
            if family == "d":
                _require(params, "sigma", "u")
                matrix = t_matrix_closed(TParams(params["sigma"], params["u"], s), N, normalized=True)
            elif family == "cprime":
                _require(params, "sigma", "tau", "theta")
                matrix = cprime_matrix(MixedParams(params["sigma"], params["tau"], params["theta"], s), N)
            else:
                raise DomainError(f"Decay fits take family d or cprime, got {family}")
            report = fit_decay_exponent(matrix, params.get("min_index"))
        elif constant in ("C0", "C1"):
            _require(params, "t")
            fit = fit_weierstrass_constant if constant == "C0" else fit_gautschi_constant
            report = fit(params["t"], params.get("p_max", 10_000))
        else:
            raise DomainError(f"Unknown constant: {constant}")
        payload = {"schema": SCHEMA_VERSION, "fit": report.to_json()}
        return payload, True, None

    def _regions(self, params: dict, config: RunConfig):
        name = params.get("set", "J1")
        if name == "V":
            _require(params, "sigma", "tau", "theta", "u")
            report = theorem_V_hypotheses(params["sigma"], params["tau"], params["theta"], params["u"])
            return {"schema": SCHEMA_VERSION, "hypotheses": report.to_json()}, True, None
        region = as_region(name)
        coordinates = REGION_COORDINATES[region.value[0]]
        _require(params, *coordinates)
        verdict = region_verdict(region, [params[c] for c in coordinates])
        payload = {"schema": SCHEMA_VERSION}
        payload.update(verdict.to_json())
        return payload, True, None

    def _witten(self, params: dict, config: RunConfig):
        _require(params, "kappa", "u")
        length = params.get("length", 2)
        model = witten_build(params["kappa"], params["u"], s=params.get("s", 1.0),
                             mu=params.get("mu", 1.0 if length == 2 else 0.0),
                             sign=params.get("sign", "+"), length=length)
        spectra = witten_spectrum(model, params.get("N", SPECTRA.default_order))
        payload = {"schema": SCHEMA_VERSION, "model": model.to_json(),
                   "spectra": {label: result.to_json() for label, result in sorted(spectra.items())}}
        lower, middle = "delta_r-1/row1", "delta_r/row1"
        if length == 2 and lower in spectra and middle in spectra:
            payload["pairing"] = supersymmetric_pairing(spectra[lower], spectra[middle],
                                                        count=params.get("count", 3))
        return payload, True, None

    def _verify_all(self, params: dict, config: RunConfig):
        only = _int_list(params["only"]) if "only" in params else None
        summary = verify_all(only=only, debug=self.debug)
        return summary.to_json(), summary.ok, None


def run(config: RunConfig, debug: bool = False) -> int:
    """Execute one command; returns the process exit status."""
    return Runner(debug=debug).run(config)
