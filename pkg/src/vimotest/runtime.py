"""In-process scenario execution against user-supplied presentation logic.

The widget state store is the observable surface of the system under test:
presentation logic mutates it in response to command actions, and the
then-part assertions read it back. Context definitions are rendered to
strings (multiline, JSON, or XML) and handed to a test-setup adapter before
any action runs.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Protocol

from .analyzer import ContextArgument, LinkedScenario, LinkedSuite
from .model import (
    BOOL_FEATURES,
    RowsExpectation,
    COMMAND_EFFECT,
    ContextBody,
    DataTableBody,
    FeatureKind,
    FileBody,
    TextBody,
    ViewModelDescription,
    WidgetCommand,
    WidgetDecl,
    WidgetKind,
    XmlBody,
)

STORE_COLORS = ("red", "green", "yellow", "blue", "gray")


class StoreError(Exception):
    """A write violated the description-derived store invariants."""


class ExecutionError(Exception):
    """Scenario execution failed outside of an assertion mismatch."""


@dataclass(frozen=True)
class CellValue:
    text: str = ""  # label text or image name, depending on the column kind
    tooltip: str | None = None
    color: str | None = None


@dataclass(frozen=True)
class RowValue:
    cells: tuple[CellValue, ...]
    color: str | None = None


@dataclass(frozen=True)
class CheckFailure:
    widget: str
    feature: str
    aspect: str  # value | tooltip | color | selected | rowCount
    expected: str
    actual: str
    row_index: int | None = None
    column_title: str | None = None


@dataclass(frozen=True)
class ScenarioResult:
    description: str
    status: str  # passed | failed | error
    failures: tuple[CheckFailure, ...] = ()
    duration_millis: int = 0
    error: str | None = None


class PresentationLogicPort(Protocol):
    def handle(self, command: str, args: list, store: "WidgetStateStore") -> None:
        """React to one command action by mutating the store."""


class TestSetupPort(Protocol):
    def provide_context(self, name: str, payload: str, delivery: str) -> None:
        """Receive one rendered context; payload is inline text or a file path."""


@dataclass(frozen=True)
class RunConfig:
    """Runtime slice of the generation configuration."""

    context_format: str = "multiline"  # multiline | json | xml
    context_delivery: str = "inline"  # inline | file


# ---------------------------------------------------------------------------
# Widget state store
# ---------------------------------------------------------------------------


class WidgetStateStore:
    """Mutable (widget, feature) -> value map scoped to one scenario run.

    Only features enabled in the description exist; writes of anything else
    raise StoreError. Table rows always match the declared column count and
    the selected row index always stays below the row count.
    """

    def __init__(self, description: ViewModelDescription):
        self._widgets: dict[str, WidgetDecl] = {w.name: w for w in description.widgets}
        self._values: dict[tuple[str, FeatureKind], object] = {}
        for widget in description.widgets:
            examples = dict(widget.examples)
            for feature in widget.features():
                self._values[(widget.name, feature)] = examples.get(
                    feature, _default_value(feature))

    def _feature(self, widget: str, feature: FeatureKind | str) -> FeatureKind:
        if isinstance(feature, str):
            try:
                feature = FeatureKind(feature)
            except ValueError:
                raise StoreError(f"unknown feature '{feature}'") from None
        return feature

    def _key(self, widget: str, feature: FeatureKind | str) -> tuple[str, FeatureKind]:
        feature = self._feature(widget, feature)
        decl = self._widgets.get(widget)
        if decl is None:
            raise StoreError(f"unknown widget '{widget}'")
        if feature not in decl.features():
            raise StoreError(
                f"widget '{widget}' does not have the '{feature.value}' feature")
        return widget, feature

    def widget(self, name: str) -> WidgetDecl:
        decl = self._widgets.get(name)
        if decl is None:
            raise StoreError(f"unknown widget '{name}'")
        return decl

    def get(self, widget: str, feature: FeatureKind | str):
        value = self._values[self._key(widget, feature)]
        if isinstance(value, tuple):
            return list(value)
        return value

    def set(self, widget: str, feature: FeatureKind | str, value) -> None:
        key = self._key(widget, feature)
        self._values[key] = self._validate(key[0], key[1], value)

    def rows(self, widget: str) -> list[RowValue]:
        return self.get(widget, FeatureKind.ROWS)

    def set_rows(self, widget: str, rows) -> None:
        self.set(widget, FeatureKind.ROWS, rows)

    def selected_row(self, widget: str) -> int | None:
        return self.get(widget, FeatureKind.SELECTED_ROW)

    def _validate(self, widget: str, feature: FeatureKind, value):
        decl = self._widgets[widget]
        if feature in BOOL_FEATURES:
            if not isinstance(value, bool):
                raise StoreError(f"{widget}.{feature.value} takes a bool, got {value!r}")
            return value
        if feature is FeatureKind.TEXT:
            if not isinstance(value, str):
                raise StoreError(f"{widget}.{feature.value} takes a string, got {value!r}")
            return value
        if feature is FeatureKind.SELECTED_ROW:
            if value is None:
                return None
            if not isinstance(value, int) or isinstance(value, bool):
                raise StoreError(
                    f"{widget}.selectedRow takes an int or None, got {value!r}")
            count = len(self._values[(widget, FeatureKind.ROWS)])
            if not 0 <= value < count:
                raise StoreError(
                    f"{widget}.selectedRow = {value} is out of range "
                    f"for {count} row(s)")
            return value
        assert feature is FeatureKind.ROWS
        arity = len(decl.columns)
        checked: list[RowValue] = []
        for row in value:
            if not isinstance(row, RowValue):
                raise StoreError(f"{widget}.rows takes RowValue items, got {row!r}")
            if len(row.cells) != arity:
                raise StoreError(
                    f"{widget} row has {len(row.cells)} cells; "
                    f"the table declares {arity} columns")
            _validate_color(row.color, f"{widget} row")
            for cell in row.cells:
                _validate_color(cell.color, f"{widget} cell")
            checked.append(row)
        selected = self._values.get((widget, FeatureKind.SELECTED_ROW))
        if isinstance(selected, int) and selected >= len(checked):
            raise StoreError(
                f"{widget}.selectedRow = {selected} would exceed the new "
                f"row count {len(checked)}; clear the selection first")
        return tuple(checked)


def _validate_color(color: str | None, what: str) -> None:
    if color is not None and color not in STORE_COLORS:
        raise StoreError(f"{what} color must be one of {STORE_COLORS}, got {color!r}")


def _default_value(feature: FeatureKind):
    if feature in BOOL_FEATURES:
        return False
    if feature is FeatureKind.TEXT:
        return ""
    if feature is FeatureKind.ROWS:
        return ()
    return None  # selectedRow


# ---------------------------------------------------------------------------
# Context rendering
# ---------------------------------------------------------------------------


def render_context(body: ContextBody, format: str = "multiline") -> str:
    """Render a resolved context body to a string.

    Data tables render per the requested format; every other body passes
    through unchanged. File bodies are read from disk.
    """
    if isinstance(body, DataTableBody):
        if format == "multiline":
            return _render_multiline(body)
        if format == "json":
            return _render_json(body)
        if format == "xml":
            return _render_xml(body)
        raise ValueError(f"unknown context format {format!r}")
    if isinstance(body, (TextBody, XmlBody)):
        return body.text
    if isinstance(body, FileBody):
        try:
            with open(body.path, encoding="utf-8") as handle:
                return handle.read()
        except OSError as exc:
            raise ExecutionError(
                f"cannot read context file '{body.path}': {exc}") from exc
    raise ValueError(f"cannot render unresolved context body {body!r}")


def _render_multiline(body: DataTableBody) -> str:
    lines = [" | ".join(body.header)]
    lines.extend(" | ".join(row) for row in body.rows)
    return "\n".join(lines)


def _render_json(body: DataTableBody) -> str:
    records = [dict(zip(body.header, row)) for row in body.rows]
    return json.dumps(records, separators=(",", ":"), ensure_ascii=False)


def _render_xml(body: DataTableBody) -> str:
    names = [title.replace(" ", "_") for title in body.header]
    if not body.rows:
        return "<rows/>"
    rows = []
    for row in body.rows:
        attrs = " ".join(
            f'{name}="{_xml_escape(cell)}"' for name, cell in zip(names, row))
        rows.append(f"<row {attrs}/>" if attrs else "<row/>")
    return "<rows>" + "".join(rows) + "</rows>"


def _xml_escape(value: str) -> str:
    return (value.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


# ---------------------------------------------------------------------------
# Check evaluation
# ---------------------------------------------------------------------------


def _show(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    return str(value)


def evaluate_rows_check(widget: WidgetDecl, expectation,
                        rows: list[RowValue],
                        selected_row: int | None) -> list[CheckFailure]:
    """Compare a rows expectation against actual table state.

    A row-count mismatch is reported as a single failure and suppresses all
    finer-grained checks. Ignored cells and columns never produce failures.
    """
    name = widget.name
    failures: list[CheckFailure] = []
    if len(expectation.rows) != len(rows):
        return [CheckFailure(widget=name, feature="rows", aspect="rowCount",
                             expected=str(len(expectation.rows)),
                             actual=str(len(rows)))]
    declared = {c.title: i for i, c in enumerate(widget.columns)}
    column_of = [declared[title] for title in expectation.header]
    any_selected_mark = any(r.selected for r in expectation.rows)
    for i, (expected_row, actual_row) in enumerate(zip(expectation.rows, rows)):
        for j, cell in enumerate(expected_row.cells):
            if cell.ignored:
                continue
            title = expectation.header[j]
            actual_cell = actual_row.cells[column_of[j]]
            if cell.value != actual_cell.text:
                failures.append(CheckFailure(
                    widget=name, feature="rows", aspect="value",
                    expected=cell.value, actual=actual_cell.text,
                    row_index=i, column_title=title))
            if cell.tooltip is not None and cell.tooltip != (actual_cell.tooltip or ""):
                failures.append(CheckFailure(
                    widget=name, feature="rows", aspect="tooltip",
                    expected=cell.tooltip, actual=_show(actual_cell.tooltip),
                    row_index=i, column_title=title))
            if cell.color is not None and not _color_matches(cell.color,
                                                             actual_cell.color):
                failures.append(CheckFailure(
                    widget=name, feature="rows", aspect="color",
                    expected=cell.color, actual=_show(actual_cell.color),
                    row_index=i, column_title=title))
        if expected_row.color is not None and not _color_matches(expected_row.color,
                                                                 actual_row.color):
            failures.append(CheckFailure(
                widget=name, feature="rows", aspect="color",
                expected=expected_row.color, actual=_show(actual_row.color),
                row_index=i))
        if expected_row.selected and selected_row != i:
            failures.append(CheckFailure(
                widget=name, feature="selectedRow", aspect="selected",
                expected="selected", actual="not selected", row_index=i))
        elif (not expected_row.selected and any_selected_mark
              and selected_row == i):
            failures.append(CheckFailure(
                widget=name, feature="selectedRow", aspect="selected",
                expected="not selected", actual="selected", row_index=i))
    check = expectation.selected_row_check
    if check is not None:
        expected_index = None if check == "none" else check
        if selected_row != expected_index:
            failures.append(CheckFailure(
                widget=name, feature="selectedRow", aspect="selected",
                expected=_show(expected_index), actual=_show(selected_row),
                row_index=expected_index if isinstance(expected_index, int) else None))
    return failures


def _color_matches(expected: str, actual: str | None) -> bool:
    if expected == "none":
        return actual is None
    return expected == actual


def _evaluate_check(check, store: WidgetStateStore) -> list[CheckFailure]:
    if isinstance(check.expectation, RowsExpectation):
        widget = store.widget(check.widget)
        rows = store.rows(check.widget)
        selected = (store.selected_row(check.widget)
                    if FeatureKind.SELECTED_ROW in widget.features() else None)
        return evaluate_rows_check(widget, check.expectation, rows, selected)
    actual = store.get(check.widget, check.feature)
    if actual != check.expectation:
        return [CheckFailure(widget=check.widget, feature=check.feature.value,
                             aspect="value", expected=_show(check.expectation),
                             actual=_show(actual))]
    return []


# ---------------------------------------------------------------------------
# Scenario execution
# ---------------------------------------------------------------------------


def execute_scenario(
    linked: LinkedScenario,
    description: ViewModelDescription,
    logic: PresentationLogicPort,
    setup: TestSetupPort,
    config: RunConfig = RunConfig(),
) -> ScenarioResult:
    """Run one scenario: deliver contexts, dispatch actions, evaluate checks."""
    start = time.perf_counter()
    temp_dir: tempfile.TemporaryDirectory | None = None

    def duration() -> int:
        return int((time.perf_counter() - start) * 1000)

    try:
        store = WidgetStateStore(description)
        try:
            for context in linked.contexts:
                payload = render_context(context.body, config.context_format)
                if config.context_delivery == "file":
                    if temp_dir is None:
                        temp_dir = tempfile.TemporaryDirectory(prefix="vimotest-")
                    path = os.path.join(temp_dir.name, f"{context.name}.ctx")
                    with open(path, "w", encoding="utf-8", newline="\n") as handle:
                        handle.write(payload)
                    setup.provide_context(context.name, os.path.abspath(path), "file")
                else:
                    setup.provide_context(context.name, payload, "inline")
            for action in linked.actions:
                args = []
                for arg in action.args:
                    if isinstance(arg, ContextArgument):
                        args.append(render_context(arg.body, config.context_format))
                    else:
                        args.append(arg)
                form = action.decl.form
                if isinstance(form, WidgetCommand):
                    effect = COMMAND_EFFECT[form.kind]
                    if effect is not None:
                        store.set(form.target, effect, args[0])
                logic.handle(action.decl.name, args, store)
        except (StoreError, ExecutionError) as exc:
            return ScenarioResult(description=linked.scenario.description,
                                  status="error", duration_millis=duration(),
                                  error=str(exc))
        except Exception as exc:  # logic and setup are user code
            return ScenarioResult(description=linked.scenario.description,
                                  status="error", duration_millis=duration(),
                                  error=f"{type(exc).__name__}: {exc}")
        failures: list[CheckFailure] = []
        for check in linked.checks:
            failures.extend(_evaluate_check(check, store))
        status = "passed" if not failures else "failed"
        return ScenarioResult(description=linked.scenario.description,
                              status=status, failures=tuple(failures),
                              duration_millis=duration())
    finally:
        if temp_dir is not None:
            temp_dir.cleanup()


def run_suite(
    linked: LinkedSuite,
    logic_factory: Callable[[], PresentationLogicPort],
    setup_factory: Callable[[], TestSetupPort],
    config: RunConfig = RunConfig(),
    parallel: int | None = None,
) -> list[ScenarioResult]:
    """Run every scenario with a fresh logic/setup pair; results keep order."""

    def run_one(scenario: LinkedScenario) -> ScenarioResult:
        try:
            logic = logic_factory()
            setup = setup_factory()
        except Exception as exc:
            return ScenarioResult(description=scenario.scenario.description,
                                  status="error",
                                  error=f"factory failed: {exc}")
        return execute_scenario(scenario, linked.description, logic, setup, config)

    if parallel is not None and parallel > 1 and len(linked.scenarios) > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            return list(pool.map(run_one, linked.scenarios))
    return [run_one(s) for s in linked.scenarios]
