"""Semantic analysis: links suites to descriptions and derives target names.

``validate_description`` enforces the catalog rules on a ViewModel
description. ``resolve`` binds every widget, command, and context reference
of a test suite against its description, accumulating all diagnostics before
returning. ``compute_name_map`` derives the default target names and applies
explicit name bindings subject by subject.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .diagnostics import (
    Diagnostic,
    E_ARITY_MISMATCH,
    E_CONTEXT_CYCLE,
    E_DUPLICATE_NAME,
    E_RAGGED_TABLE,
    E_SYNTAX,
    E_TYPE_MISMATCH,
    E_UNKNOWN_COLUMN,
    E_UNKNOWN_COMMAND,
    E_UNKNOWN_WIDGET,
    E_UNRESOLVED_CONTEXT,
    E_UNSUPPORTED_FEATURE,
    error,
    has_errors,
)
from .model import (
    ArgContextRef,
    ArgLiteral,
    BOOL_FEATURES,
    CheckValue,
    CommandDecl,
    CommandKind,
    COMMAND_EFFECT,
    COMMAND_PARAM,
    ContextBody,
    ContextDefinition,
    CustomAction,
    CustomCommand,
    FeatureKind,
    ParamType,
    ReferenceBody,
    RowsExpectation,
    TestScenario,
    TestSuite,
    ViewModelDescription,
    WidgetAction,
    WidgetCommand,
    WidgetDecl,
    catalog_lookup,
    is_identifier,
)
from .names import camel_case, pascal_case, snake_case

# ---------------------------------------------------------------------------
# Linked suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolvedContext:
    """A given-part entry with its reference chain fully chased."""

    name: str
    body: ContextBody


@dataclass(frozen=True)
class ContextArgument:
    """A context-typed command argument: delivers the rendered body string."""

    name: str
    body: ContextBody


@dataclass(frozen=True)
class LinkedAction:
    decl: CommandDecl
    args: tuple = ()


@dataclass(frozen=True)
class LinkedScenario:
    scenario: TestScenario
    test_name: str
    contexts: tuple[ResolvedContext, ...] = ()
    actions: tuple[LinkedAction, ...] = ()
    checks: tuple[CheckValue, ...] = ()


@dataclass(frozen=True)
class LinkedSuite:
    suite: TestSuite
    description: ViewModelDescription
    scenarios: tuple[LinkedScenario, ...] = ()


# ---------------------------------------------------------------------------
# Description validation
# ---------------------------------------------------------------------------

_EXAMPLE_TYPES = {
    FeatureKind.ENABLED: bool,
    FeatureKind.VISIBLE: bool,
    FeatureKind.CHECKED: bool,
    FeatureKind.TEXT: str,
    FeatureKind.SELECTED_ROW: int,
}


def validate_description(desc: ViewModelDescription) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    widgets: dict[str, WidgetDecl] = {}
    for widget in desc.widgets:
        if widget.name in widgets:
            diags.append(error(E_DUPLICATE_NAME,
                               f"duplicate widget name '{widget.name}'", widget.span))
            continue
        widgets[widget.name] = widget
        _validate_widget(widget, diags)
    seen_commands: set[str] = set()
    for command in desc.commands:
        if command.name in seen_commands:
            diags.append(error(E_DUPLICATE_NAME,
                               f"duplicate command name '{command.name}'", command.span))
            continue
        seen_commands.add(command.name)
        _validate_command(command, widgets, diags)
    _validate_bindings(desc, widgets, diags)
    return diags


def _validate_widget(widget: WidgetDecl, diags: list[Diagnostic]) -> None:
    entry = catalog_lookup(widget.kind)
    for feature in sorted(widget.enabled_optional, key=lambda f: f.value):
        if feature not in entry.optional:
            diags.append(error(
                E_UNSUPPORTED_FEATURE,
                f"{widget.kind.value} widgets do not support "
                f"an optional '{feature.value}' feature",
                widget.span))
    if (widget.kind.value == "table") != bool(widget.columns):
        diags.append(error(
            E_SYNTAX,
            "table widgets declare columns; other widget kinds must not",
            widget.span))
    titles: set[str] = set()
    for column in widget.columns:
        trimmed = column.title.strip()
        if trimmed in titles:
            diags.append(error(E_DUPLICATE_NAME,
                               f"duplicate column title '{trimmed}'", column.span))
        titles.add(trimmed)
    features = widget.features()
    for feature, value in widget.examples:
        if feature not in features:
            diags.append(error(
                E_UNSUPPORTED_FEATURE,
                f"example for feature '{feature.value}' which widget "
                f"'{widget.name}' does not have",
                widget.span))
            continue
        expected = _EXAMPLE_TYPES.get(feature)
        if expected is None:
            diags.append(error(E_TYPE_MISMATCH,
                               "example values for rows are not supported", widget.span))
        elif not _is_instance(value, expected):
            diags.append(error(
                E_TYPE_MISMATCH,
                f"example for '{feature.value}' must be {expected.__name__}, "
                f"got {value!r}",
                widget.span))


def _is_instance(value, expected: type) -> bool:
    if expected is bool:
        return isinstance(value, bool)
    if expected is int:
        return isinstance(value, int) and not isinstance(value, bool)
    return isinstance(value, expected)


def _validate_command(command: CommandDecl, widgets: dict[str, WidgetDecl],
                      diags: list[Diagnostic]) -> None:
    form = command.form
    if isinstance(form, WidgetCommand):
        widget = widgets.get(form.target)
        if widget is None:
            diags.append(error(E_UNKNOWN_WIDGET,
                               f"unknown widget '{form.target}'", command.span))
            return
        if form.kind not in catalog_lookup(widget.kind).widget_commands:
            diags.append(error(
                E_UNKNOWN_COMMAND,
                f"{widget.kind.value} widgets do not support "
                f"the {form.kind.value} command",
                command.span))
            return
        effect = COMMAND_EFFECT[form.kind]
        if effect is not None and effect not in widget.features():
            diags.append(error(
                E_UNSUPPORTED_FEATURE,
                f"the {form.kind.value} command updates '{effect.value}', "
                f"which widget '{widget.name}' does not have",
                command.span))
        return
    assert isinstance(form, CustomCommand)
    seen: set[str] = set()
    for param in form.params:
        if param.name in seen:
            diags.append(error(E_DUPLICATE_NAME,
                               f"duplicate parameter name '{param.name}'", command.span))
        seen.add(param.name)


def _validate_bindings(desc: ViewModelDescription, widgets: dict[str, WidgetDecl],
                       diags: list[Diagnostic]) -> None:
    seen: set[tuple] = set()
    for binding in desc.bindings:
        key = (binding.subject, binding.widget, binding.feature)
        if key in seen:
            diags.append(error(E_DUPLICATE_NAME,
                               f"duplicate binding for {binding.subject}", binding.span))
            continue
        seen.add(key)
        if binding.subject in ("propertyName", "getterName"):
            widget = widgets.get(binding.widget or "")
            if widget is None:
                diags.append(error(E_UNKNOWN_WIDGET,
                                   f"binding names unknown widget '{binding.widget}'",
                                   binding.span))
                continue
            if binding.feature not in widget.features():
                diags.append(error(
                    E_UNSUPPORTED_FEATURE,
                    f"binding names feature '{binding.feature.value}' which widget "
                    f"'{widget.name}' does not have",
                    binding.span))
        if binding.subject != "fileName" and not is_identifier(binding.bound_name):
            diags.append(error(E_SYNTAX,
                               f"bound name is not a valid identifier: "
                               f"{binding.bound_name!r}",
                               binding.span))


# ---------------------------------------------------------------------------
# Context resolution
# ---------------------------------------------------------------------------


def build_context_registry(
    suite: TestSuite, diags: list[Diagnostic]
) -> dict[str, ContextDefinition]:
    """Suite-wide name -> definition map. Pure ``use X`` entries are references,
    not definitions, and never enter the registry."""
    registry: dict[str, ContextDefinition] = {}
    for scenario in suite.scenarios:
        for definition in scenario.given:
            if definition.is_pure_use():
                continue
            if definition.name in registry:
                diags.append(error(
                    E_DUPLICATE_NAME,
                    f"duplicate context definition '{definition.name}'",
                    definition.span))
                continue
            registry[definition.name] = definition
    return registry


def chase_context(
    start: str,
    registry: dict[str, ContextDefinition],
    diags: list[Diagnostic],
    span,
) -> ContextBody | None:
    """Follow reference bodies from ``start`` until a concrete body is found.

    Reports E107 when a name has no definition and E109 when the chain
    revisits a name.
    """
    visited: set[str] = set()
    current = start
    while True:
        if current in visited:
            diags.append(error(E_CONTEXT_CYCLE,
                               f"context reference cycle involving '{current}'", span))
            return None
        visited.add(current)
        definition = registry.get(current)
        if definition is None:
            diags.append(error(E_UNRESOLVED_CONTEXT,
                               f"unresolved context reference '{current}'", span))
            return None
        if isinstance(definition.body, ReferenceBody):
            current = definition.body.target
            continue
        return definition.body


# ---------------------------------------------------------------------------
# Suite resolution
# ---------------------------------------------------------------------------


def resolve(
    suite: TestSuite, desc: ViewModelDescription
) -> tuple[LinkedSuite | None, list[Diagnostic]]:
    if suite.target_view_model != desc.name:
        raise ValueError(
            f"suite '{suite.name}' targets '{suite.target_view_model}', "
            f"not '{desc.name}'")
    diags = validate_description(desc)
    widgets = {w.name: w for w in desc.widgets}
    commands = {c.name: c for c in desc.commands}
    widget_commands = {
        (c.form.kind, c.form.target): c
        for c in desc.commands
        if isinstance(c.form, WidgetCommand)
    }
    registry = build_context_registry(suite, diags)

    linked: list[LinkedScenario] = []
    descriptions_seen: set[str] = set()
    test_names_seen: dict[str, str] = {}
    for scenario in suite.scenarios:
        if scenario.description in descriptions_seen:
            diags.append(error(E_DUPLICATE_NAME,
                               f"duplicate scenario description "
                               f"{scenario.description!r}",
                               scenario.span))
        descriptions_seen.add(scenario.description)
        test_name = sanitize_test_name(scenario.description)
        if test_name in test_names_seen:
            diags.append(error(
                E_DUPLICATE_NAME,
                f"scenario {scenario.description!r} and "
                f"{test_names_seen[test_name]!r} map to the same "
                f"test name '{test_name}'",
                scenario.span))
        else:
            test_names_seen[test_name] = scenario.description

        contexts = _resolve_contexts(scenario, registry, diags)
        actions = _resolve_actions(scenario, widgets, commands, widget_commands,
                                   registry, diags)
        checks = _resolve_checks(scenario, widgets, diags)
        linked.append(LinkedScenario(scenario=scenario, test_name=test_name,
                                     contexts=contexts, actions=actions,
                                     checks=checks))
    if has_errors(diags):
        return None, diags
    return LinkedSuite(suite=suite, description=desc, scenarios=tuple(linked)), diags


def _resolve_contexts(scenario, registry, diags) -> tuple[ResolvedContext, ...]:
    out: list[ResolvedContext] = []
    for definition in scenario.given:
        if isinstance(definition.body, ReferenceBody):
            body = chase_context(definition.body.target, registry, diags,
                                 definition.span)
            if body is None:
                continue
        else:
            body = definition.body
        out.append(ResolvedContext(name=definition.name, body=body))
    return tuple(out)


def _resolve_actions(scenario, widgets, commands, widget_commands, registry,
                     diags) -> tuple[LinkedAction, ...]:
    out: list[LinkedAction] = []
    for action in scenario.when:
        if isinstance(action, WidgetAction):
            linked = _resolve_widget_action(action, widgets, widget_commands, diags)
        else:
            linked = _resolve_custom_action(action, commands, registry, diags)
        if linked is not None:
            out.append(linked)
    return tuple(out)


def _resolve_widget_action(action: WidgetAction, widgets, widget_commands,
                           diags) -> LinkedAction | None:
    if action.widget not in widgets:
        diags.append(error(E_UNKNOWN_WIDGET,
                           f"unknown widget '{action.widget}'", action.span))
        return None
    decl = widget_commands.get((action.kind, action.widget))
    if decl is None:
        diags.append(error(
            E_UNKNOWN_COMMAND,
            f"no {action.kind.value} command is declared on widget "
            f"'{action.widget}'",
            action.span))
        return None
    expected = COMMAND_PARAM[action.kind]
    if expected is None:
        if action.arg is not None:
            diags.append(error(E_ARITY_MISMATCH,
                               f"{action.kind.value} takes no argument", action.span))
            return None
        return LinkedAction(decl=decl)
    if not _matches_param_type(action.arg, expected):
        diags.append(error(
            E_TYPE_MISMATCH,
            f"{action.kind.value} expects a {expected.value} argument, "
            f"got {action.arg!r}",
            action.span))
        return None
    return LinkedAction(decl=decl, args=(action.arg,))


def _resolve_custom_action(action: CustomAction, commands, registry,
                           diags) -> LinkedAction | None:
    decl = commands.get(action.name)
    if decl is None or not isinstance(decl.form, CustomCommand):
        diags.append(error(E_UNKNOWN_COMMAND,
                           f"unknown command '{action.name}'", action.span))
        return None
    params = decl.form.params
    if len(action.args) != len(params):
        diags.append(error(
            E_ARITY_MISMATCH,
            f"command '{action.name}' expects {len(params)} argument(s), "
            f"got {len(action.args)}",
            action.span))
        return None
    resolved: list = []
    ok = True
    for param, arg in zip(params, action.args):
        if param.type is ParamType.CONTEXT:
            if not isinstance(arg, ArgContextRef):
                diags.append(error(
                    E_TYPE_MISMATCH,
                    f"parameter '{param.name}' of '{action.name}' takes a "
                    f"context reference",
                    action.span))
                ok = False
                continue
            body = chase_context(arg.name, registry, diags, action.span)
            if body is None:
                ok = False
                continue
            resolved.append(ContextArgument(name=arg.name, body=body))
            continue
        if isinstance(arg, ArgContextRef):
            diags.append(error(
                E_TYPE_MISMATCH,
                f"parameter '{param.name}' of '{action.name}' takes a "
                f"{param.type.value} literal, got a context reference",
                action.span))
            ok = False
            continue
        assert isinstance(arg, ArgLiteral)
        if not _matches_param_type(arg.value, param.type):
            diags.append(error(
                E_TYPE_MISMATCH,
                f"parameter '{param.name}' of '{action.name}' takes "
                f"{param.type.value}, got {arg.value!r}",
                action.span))
            ok = False
            continue
        resolved.append(arg.value)
    if not ok:
        return None
    return LinkedAction(decl=decl, args=tuple(resolved))


def _matches_param_type(value, ptype: ParamType) -> bool:
    if ptype is ParamType.BOOL:
        return isinstance(value, bool)
    if ptype is ParamType.INT:
        return isinstance(value, int) and not isinstance(value, bool)
    if ptype is ParamType.STRING:
        return isinstance(value, str)
    return False


def _resolve_checks(scenario, widgets, diags) -> tuple[CheckValue, ...]:
    out: list[CheckValue] = []
    seen: set[tuple[str, FeatureKind]] = set()
    for check in scenario.then:
        widget = widgets.get(check.widget)
        if widget is None:
            diags.append(error(E_UNKNOWN_WIDGET,
                               f"unknown widget '{check.widget}'", check.span))
            continue
        if widget.kind is not check.widget_kind:
            diags.append(error(
                E_UNKNOWN_WIDGET,
                f"widget '{check.widget}' is not a {check.widget_kind.value} "
                f"(declared {widget.kind.value})",
                check.span))
            continue
        if check.feature not in widget.features():
            diags.append(error(
                E_UNSUPPORTED_FEATURE,
                f"widget '{check.widget}' does not have the "
                f"'{check.feature.value}' feature",
                check.span))
            continue
        key = (check.widget, check.feature)
        if key in seen:
            diags.append(error(
                E_DUPLICATE_NAME,
                f"duplicate check for {check.widget}.{check.feature.value} "
                f"in one scenario",
                check.span))
            continue
        seen.add(key)
        if isinstance(check.expectation, RowsExpectation):
            if not _check_rows_expectation(check, widget, diags):
                continue
        elif check.feature in BOOL_FEATURES:
            if not isinstance(check.expectation, bool):
                diags.append(error(E_TYPE_MISMATCH,
                                   f"'{check.feature.value}' expects a bool",
                                   check.span))
                continue
        elif check.feature is FeatureKind.TEXT:
            if not isinstance(check.expectation, str):
                diags.append(error(E_TYPE_MISMATCH,
                                   "'text' expects a string", check.span))
                continue
        out.append(check)
    return tuple(out)


def _check_rows_expectation(check: CheckValue, widget: WidgetDecl,
                            diags: list[Diagnostic]) -> bool:
    exp = check.expectation
    assert isinstance(exp, RowsExpectation)
    declared = [c.title for c in widget.columns]
    declared_set = set(declared)
    ok = True
    for title in exp.ignored_columns:
        if title not in declared_set:
            diags.append(error(
                E_UNKNOWN_COLUMN,
                f"ignored column '{title}' is not a column of "
                f"'{widget.name}'",
                check.span))
            ok = False
    header_seen: set[str] = set()
    for title in exp.header:
        if title not in declared_set:
            diags.append(error(
                E_UNKNOWN_COLUMN,
                f"column '{title}' is not a column of '{widget.name}'",
                check.span))
            ok = False
            continue
        if title in header_seen:
            diags.append(error(E_UNKNOWN_COLUMN,
                               f"duplicate column '{title}' in expectation header",
                               check.span))
            ok = False
        header_seen.add(title)
        if title in exp.ignored_columns:
            diags.append(error(
                E_UNKNOWN_COLUMN,
                f"column '{title}' is both asserted and ignored",
                check.span))
            ok = False
    for title in declared:
        if title not in header_seen and title not in exp.ignored_columns:
            diags.append(error(
                E_UNKNOWN_COLUMN,
                f"column '{title}' of '{widget.name}' is neither asserted "
                f"nor ignored",
                check.span))
            ok = False
    for row in exp.rows:
        if len(row.cells) != len(exp.header):
            diags.append(error(
                E_RAGGED_TABLE,
                f"expectation row has {len(row.cells)} cells but the header "
                f"has {len(exp.header)}",
                check.span))
            ok = False
    asserts_selection = (exp.selected_row_check is not None
                         or any(r.selected for r in exp.rows))
    if asserts_selection and FeatureKind.SELECTED_ROW not in widget.features():
        diags.append(error(
            E_UNSUPPORTED_FEATURE,
            f"widget '{widget.name}' does not have the 'selectedRow' feature",
            check.span))
        ok = False
    return ok


# ---------------------------------------------------------------------------
# Name map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyNames:
    property_name: str
    getter: str
    setter: str


@dataclass(frozen=True)
class CommandNames:
    method: str
    param_object: str


@dataclass(frozen=True)
class NameMap:
    type_name: str
    file_name: str
    file_name_bound: bool = False
    properties: dict = field(default_factory=dict)  # (widget, feature) -> PropertyNames
    commands: dict = field(default_factory=dict)  # command name -> CommandNames


def sanitize_test_name(description: str) -> str:
    """Turn a free-text scenario description into a target method name."""
    words = re.findall(r"[A-Za-z0-9]+", description)
    if not words:
        return "scenario"
    name = camel_case(*words)
    if name[0].isdigit():
        name = "scenario" + pascal_case(*words)
    return name


def default_property_name(widget: str, feature: FeatureKind) -> str:
    return camel_case(widget, feature.value)


def compute_name_map(
    desc: ViewModelDescription, config=None
) -> tuple[NameMap | None, list[Diagnostic]]:
    """Derive the target-name map; explicit bindings override subject by subject."""
    diags: list[Diagnostic] = []
    overrides: dict[tuple, str] = {}
    type_name = desc.name
    file_name_bound = False
    file_name = snake_case(desc.name)
    widgets = {w.name: w for w in desc.widgets}
    for binding in desc.bindings:
        if binding.subject == "typeName":
            type_name = binding.bound_name
        elif binding.subject == "fileName":
            file_name = binding.bound_name
            file_name_bound = True
        else:
            widget = widgets.get(binding.widget or "")
            if widget is None or binding.feature not in widget.features():
                continue  # validate_description reports these
            overrides[(binding.subject, binding.widget, binding.feature)] = \
                binding.bound_name

    properties: dict[tuple[str, FeatureKind], PropertyNames] = {}
    for widget in desc.widgets:
        for feature in sorted(widget.features(), key=lambda f: f.value):
            default = default_property_name(widget.name, feature)
            prop = overrides.get(("propertyName", widget.name, feature), default)
            prefix = "is" if feature in BOOL_FEATURES else "get"
            getter = overrides.get(("getterName", widget.name, feature),
                                   prefix + pascal_case(default))
            properties[(widget.name, feature)] = PropertyNames(
                property_name=prop, getter=getter,
                setter="set" + pascal_case(default))

    commands: dict[str, CommandNames] = {}
    for command in desc.commands:
        commands[command.name] = CommandNames(
            method="on" + pascal_case(command.name),
            param_object=pascal_case(command.name) + "Params")

    _report_collisions(desc, properties, commands, diags)
    if has_errors(diags):
        return None, diags
    return NameMap(type_name=type_name, file_name=file_name,
                   file_name_bound=file_name_bound, properties=properties,
                   commands=commands), diags


def _report_collisions(desc, properties, commands, diags) -> None:
    def check(kind: str, pairs) -> None:
        seen: dict[str, object] = {}
        for key, name in pairs:
            if name in seen:
                diags.append(error(
                    E_DUPLICATE_NAME,
                    f"{kind} '{name}' is produced by both {seen[name]} and {key}",
                    desc.span))
            else:
                seen[name] = key

    check("property name",
          ((f"{w}.{f.value}", p.property_name) for (w, f), p in properties.items()))
    check("getter name",
          ((f"{w}.{f.value}", p.getter) for (w, f), p in properties.items()))
    check("setter name",
          ((f"{w}.{f.value}", p.setter) for (w, f), p in properties.items()))
    check("command method",
          ((name, c.method) for name, c in commands.items()))
