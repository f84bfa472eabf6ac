"""
Acceptance suites run by ``manage.py verify``.

Each suite returns a plain dict; ``render_report`` turns it into the
indented JSON document printed on standard output.
"""
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from django.conf import settings
from rest_framework.renderers import JSONRenderer

from folding.models import Operator
from folding.orbits import crystal_operators, lowering_operators, orbit, weyl_dimension
from folding.services import (
    OPERATORS,
    block_strip_violations,
    operator_indices,
    reflection_normal_form,
    try_operator,
)
from gallery.generators import minimal_dominant_gallery, random_corpus
from gallery.services import (
    alcove_window,
    gallery_type,
    is_valid,
    validate,
    weakly_above,
    weight,
)
from glued_complex.models import ChartId, Direction, FoldingAutomorphism, HalfSpace, LabeledFace
from glued_complex.services import induced_reflection, reflection_lemma_holds, retract, transition
from glued_complex.theorems import Outcome, evaluate_theorem
from path_bridge.models import Segment
from path_bridge.services import embed_segment, path_in_gallery, push_through
from root_geometry.exceptions import GeometryError
from root_geometry.linalg import mat_vec
from root_geometry.services import affine_reflection, build_root_system, coroot_translation
from tree_building.exceptions import NoWitness
from tree_building.models import End
from tree_building.services import (
    apartment_through,
    apartments_through,
    build_tree,
    compat_witness,
    fiber_partition,
    is_apartment,
    profile_partition,
    retract_at_alcove,
    retract_from_end,
    uncovered_vertices,
    within_margin,
)

logger = logging.getLogger(__name__)

MAX_FAILURES = 5
PATH_SAMPLES = 100
PATH_STEPS = 3
INDEPENDENCE_RADIUS = 4


class Suite:
    OPERATORS = 'operators'
    THEOREMS = 'theorems'
    TREE = 'tree'
    PATHS = 'paths'
    ALL = 'all'

    CHOICES = [OPERATORS, THEOREMS, TREE, PATHS, ALL]


@dataclass(frozen=True)
class SuiteOptions:
    type_label: str = 'A2'
    samples: int = None
    seed: int = None
    max_length: int = None
    q: int = 2
    depth: int = 8
    jobs: int = 1
    experiment: bool = False

    def __post_init__(self):
        defaults = settings.GALLERY_FOLDING
        if self.samples is None:
            object.__setattr__(self, 'samples', defaults['VERIFY_SAMPLES'])
        if self.seed is None:
            object.__setattr__(self, 'seed', defaults['VERIFY_SEED'])
        if self.max_length is None:
            object.__setattr__(self, 'max_length', defaults['VERIFY_MAX_LENGTH'])


@dataclass
class CheckTally:
    """Pass count of one check with the first few failures as evidence."""
    checked: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)
    asserted: bool = True

    def record(self, ok, **evidence):
        self.checked += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < MAX_FAILURES:
            self.failures.append(evidence)

    @property
    def ok(self):
        return not self.asserted or self.passed == self.checked

    def as_dict(self):
        return {
            'checked': self.checked,
            'passed': self.passed,
            'rate': rate(self.passed, self.checked),
            'asserted': self.asserted,
            'failures': self.failures,
        }


def rate(part, whole):
    return f'{part}/{whole}'


def _tallies(*names):
    return {name: CheckTally() for name in names}


def _report(suite, options, tallies, **extra):
    ok = all(tally.ok for tally in tallies.values())
    report = {
        'suite': suite,
        'ok': ok,
        'checks': {name: tally.as_dict() for name, tally in tallies.items()},
    }
    report.update(extra)
    logger.info('Suite %s finished: %s', suite, 'ok' if ok else 'FAILED')
    return report


def _fan_out(function, items, jobs):
    """Per-item results in the order of ``items``."""
    if jobs <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(function, items))


def _corpus_header(rs, options):
    return {
        'type': rs.type_label,
        'samples': options.samples,
        'seed': options.seed,
        'max_length': options.max_length,
    }


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------

_SIGN = {Operator.E: 1, Operator.F: -1, Operator.E_TILDE: 0}
_INVERSE = {Operator.E: Operator.F, Operator.F: Operator.E}


def _operator_checks(rs, item):
    """(check, ok, evidence) triples for one corpus gallery."""
    serial, gallery = item
    found = [('corpus_validity', is_valid(rs, gallery), {'serial': serial})]
    start_type = gallery_type(rs, gallery)
    for alpha in range(1, rs.rank + 1):
        for operator in Operator:
            indices = operator_indices(rs, gallery, alpha, operator)
            if indices is None:
                continue
            evidence = {'serial': serial, 'operator': str(operator), 'root': alpha}
            try:
                image = OPERATORS[operator](rs, gallery, alpha)
            except GeometryError as exc:
                found.append(('block_geometry', False, {**evidence, 'error': str(exc)}))
                continue
            outside = block_strip_violations(gallery, indices)
            found.append(('block_geometry', not outside, {**evidence, 'outside_strip': outside}))
            violations = validate(rs, image)
            found.append(('operator_validity', not violations, {
                **evidence, 'violations': [v.as_dict() for v in violations],
            }))
            coroot = rs.coroot(rs.simple_root(alpha))
            expected = tuple(x + _SIGN[operator] * c for x, c in zip(weight(gallery), coroot))
            found.append(('weight_law', weight(image) == expected, evidence))
            found.append(('type_preservation', gallery_type(rs, image) == start_type, evidence))
            found.append((
                'normal_form',
                reflection_normal_form(rs, gallery, alpha, operator) == image,
                evidence,
            ))
            if operator in _INVERSE:
                back = try_operator(rs, image, alpha, _INVERSE[operator])
                if back is not None:
                    found.append(('inverse_law', back == gallery, evidence))
    return serial, found


def affine_identity_checks(rs, tally, levels=range(-5, 6)):
    """s_{alpha,m+1} after s_{alpha,m} is the translation by alpha^vee."""
    for alpha in rs.simple_roots:
        translation = coroot_translation(rs, alpha)
        for m in levels:
            composite = affine_reflection(rs, alpha, m + 1).compose(affine_reflection(rs, alpha, m))
            tally.record(composite == translation, root=list(alpha), m=m)


def crystal_check(rs):
    """Size of the lowering orbit of the minimal gallery to the highest coroot."""
    coweight = rs.coroot(rs.highest_root)
    expected = weyl_dimension(rs, coweight)
    summary = {'coweight': [str(c) for c in coweight], 'weyl_dimension': expected}
    try:
        members = orbit(rs, minimal_dominant_gallery(rs, coweight), lowering_operators(rs))
    except GeometryError as exc:
        logger.warning('Crystal orbit of %s failed: %s', rs.type_label, exc)
        return {**summary, 'error': str(exc)}, False
    summary['orbit_size'] = len(members)
    return summary, len(members) == expected


def run_operators(options):
    rs = build_root_system(options.type_label)
    corpus = random_corpus(rs, options.samples, options.seed, options.max_length)
    tallies = _tallies(
        'corpus_validity', 'block_geometry', 'operator_validity', 'weight_law',
        'inverse_law', 'type_preservation', 'normal_form', 'affine_identity', 'crystal',
    )
    results = _fan_out(lambda item: _operator_checks(rs, item), corpus, options.jobs)
    for serial, found in sorted(results, key=lambda pair: pair[0]):
        for name, ok, evidence in found:
            tallies[name].record(ok, **evidence)
    affine_identity_checks(rs, tallies['affine_identity'])

    crystal, matched = crystal_check(rs)
    tallies['crystal'].asserted = rs.type_label in ('A1', 'A2')
    tallies['crystal'].record(matched, **crystal)
    return _report(Suite.OPERATORS, options, tallies, corpus=_corpus_header(rs, options), crystal=crystal)


# ---------------------------------------------------------------------------
# Theorems
# ---------------------------------------------------------------------------

def _theorem_outcomes(rs, item, experiment):
    serial, gallery = item
    outcomes = []
    for alpha in range(1, rs.rank + 1):
        for operator in Operator:
            outcomes.append((operator, alpha, evaluate_theorem(rs, gallery, alpha, operator, experiment)))
    return serial, outcomes


def _branch_face(rs, alcove, alpha, k):
    if weakly_above(alcove, alpha, k):
        return alcove
    return alcove.map(affine_reflection(rs, alpha, k))


def chart_checks(rs, tallies, radius=4, levels=range(-3, 4)):
    """Reflection lemma, chart coherence and induced reflections near the origin."""
    window = alcove_window(rs, radius)
    for alpha in rs.simple_roots:
        for k in levels:
            reflection = affine_reflection(rs, alpha, k)
            lower, folded = ChartId.lower(alpha, k), ChartId.folded(alpha, k)
            u = FoldingAutomorphism(alpha, k, HalfSpace.NEGATIVE)
            for alcove in window:
                evidence = {'alcove': str(alcove), 'root': list(alpha), 'k': k}
                branch = _branch_face(rs, alcove, alpha, k)
                tallies['reflection_lemma'].record(reflection_lemma_holds(rs, branch, alpha, k), **evidence)

                x = LabeledFace(lower, branch)
                moved = transition(rs, x, folded)
                coherent = transition(rs, moved, lower) == x and all(
                    retract(rs, moved, direction) == retract(rs, x, direction)
                    for direction in Direction
                )
                tallies['chart_coherence'].record(coherent, **evidence)
                tallies['induced_reflection'].record(
                    induced_reflection(rs, u, alcove) == alcove.map(reflection), **evidence,
                )


def run_theorems(options):
    rs = build_root_system(options.type_label)
    corpus = random_corpus(rs, options.samples, options.seed, options.max_length)
    tallies = _tallies(
        'theorem_e', 'theorem_f', 'theorem_etilde',
        'reflection_lemma', 'chart_coherence', 'induced_reflection',
    )
    counts = {operator: {outcome.value: 0 for outcome in Outcome} for operator in Operator}
    results = _fan_out(
        lambda item: _theorem_outcomes(rs, item, options.experiment), corpus, options.jobs,
    )
    for serial, outcomes in sorted(results, key=lambda pair: pair[0]):
        for operator, alpha, outcome in outcomes:
            counts[operator][outcome] += 1
            if outcome in (Outcome.MATCH, Outcome.MISMATCH):
                tallies[f'theorem_{operator.value}'].record(
                    outcome == Outcome.MATCH, serial=serial, operator=str(operator), root=alpha,
                )
    chart_checks(rs, tallies)

    statistics = {}
    for operator, outcome_counts in counts.items():
        defined = sum(outcome_counts.values()) - outcome_counts[Outcome.UNDEFINED]
        regular = outcome_counts[Outcome.MATCH] + outcome_counts[Outcome.MISMATCH]
        entry = {
            'defined': defined,
            'regular': regular,
            'regularity_rate': rate(regular, defined),
            'mismatches': outcome_counts[Outcome.MISMATCH],
        }
        if options.experiment:
            irregular = defined - regular
            entry['irregular_agreement'] = rate(outcome_counts[Outcome.IRREGULAR_AGREE], irregular)
        statistics[operator.value] = entry
    return _report(
        Suite.THEOREMS, options, tallies,
        corpus=_corpus_header(rs, options), experiment=options.experiment, statistics=statistics,
    )


# ---------------------------------------------------------------------------
# Tree
# ---------------------------------------------------------------------------

def _tree_edges(tree):
    return [(u, v) for u in range(tree.size) for v in tree.adjacency[u] if u < v]


def _contains_anchor(tree, apartment, anchor):
    if isinstance(anchor, str):
        return tree.end_vertex(anchor) in apartment
    return all(v in apartment for v in anchor)


def _anchor_name(anchor):
    return str(anchor) if isinstance(anchor, str) else '-'.join(map(str, anchor))


def _witness_checks(tree, tally):
    reach = tree.radius - 1
    vertices = [(v,) for v in range(tree.size) if tree.edge_distance[v] <= reach]
    edges = [
        e for e in _tree_edges(tree)
        if max(tree.edge_distance[e[0]], tree.edge_distance[e[1]]) <= reach
    ]
    for anchor in (tree.base_edge, End.PLUS, End.MINUS):
        for simplex in vertices + edges:
            x = simplex[0] if len(simplex) == 1 else simplex
            apartment = apartment_through(tree, x, anchor)
            ok = (
                is_apartment(tree, apartment)
                and all(v in apartment for v in simplex)
                and _contains_anchor(tree, apartment, anchor)
            )
            tally.record(ok, simplex=list(simplex), anchor=_anchor_name(anchor))


def _compat_checks(tree, tally):
    for end in End:
        for d in within_margin(tree):
            try:
                c = compat_witness(tree, end, d)
            except NoWitness:
                tally.record(False, vertex=d, end=str(end))
                continue
            tally.record(retract_at_alcove(tree, c, d) == retract_from_end(tree, end, d), vertex=d, end=str(end))


def _fiber_size_checks(tree, tally):
    fibers = fiber_partition(tree, tree.base_edge)
    for n in range(1, tree.radius + 1):
        for image in (tree.a(-n), tree.a(n + 1)):
            size = len(fibers.get(image, ()))
            tally.record(size == tree.q ** n, image=image, size=size, expected=tree.q ** n)


def _independence_checks(tree, tally):
    """Images do not depend on the apartment chosen as witness."""
    for x in range(tree.size):
        images = {retract_at_alcove(tree, tree.base_edge, x, a) for a in apartments_through(tree, x, tree.base_edge)}
        tally.record(len(images) == 1, vertex=x, anchor='base')
    for end in End:
        for x in within_margin(tree):
            images = {retract_from_end(tree, end, x, a) for a in apartments_through(tree, x, end)}
            tally.record(len(images) == 1, vertex=x, anchor=str(end))


def run_tree(options):
    tree = build_tree(options.q, options.depth)
    tallies = _tallies(
        'apartment_witness', 'compat_witness', 'busemann_fibers', 'alcove_fibers',
        'fiber_sizes', 'witness_independence',
    )
    _witness_checks(tree, tallies['apartment_witness'])
    _compat_checks(tree, tallies['compat_witness'])
    for end in End:
        tallies['busemann_fibers'].record(
            fiber_partition(tree, end) == profile_partition(tree, end), end=str(end),
        )
    for c in (tree.base_edge, (tree.a(-1), tree.a(0))):
        tallies['alcove_fibers'].record(
            fiber_partition(tree, c) == profile_partition(tree, c), edge=list(c),
        )
    _fiber_size_checks(tree, tallies['fiber_sizes'])
    _independence_checks(build_tree(options.q, min(options.depth, INDEPENDENCE_RADIUS)),
                         tallies['witness_independence'])
    uncovered = {
        _anchor_name(anchor): len(uncovered_vertices(tree, anchor))
        for anchor in (tree.base_edge, End.PLUS, End.MINUS)
    }
    return _report(Suite.TREE, options, tallies, tree={
        'q': tree.q, 'radius': tree.radius, 'vertices': tree.size, 'uncovered': uncovered,
    })


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

def _regular_coweight(rs, rng, bound=3):
    """A random coroot lattice point off every wall through the origin."""
    while True:
        coefficients = [rng.randint(-bound, bound) for _ in range(rs.rank)]
        point = mat_vec(rs.cartan, coefficients)
        if all(sum(c * x for c, x in zip(root, point)) != 0 for root in rs.positive_roots):
            return point


def _path_item(rs, seed, serial):
    rng = random.Random(f'{seed}:path:{serial}')
    segment = Segment(rs.origin, _regular_coweight(rs, rng))
    evidence = {'serial': serial, 'end': [str(c) for c in segment.end]}
    gallery = embed_segment(rs, segment)
    operations = []
    for _ in range(PATH_STEPS):
        available = [
            (operator, alpha) for operator, alpha in crystal_operators(rs)
            if operator_indices(rs, gallery, alpha, operator) is not None
        ]
        if not available:
            break
        operator, alpha = rng.choice(available)
        gallery = try_operator(rs, gallery, alpha, operator)
        operations.append((operator, alpha))
    evidence['operations'] = [f'{operator}{alpha}' for operator, alpha in operations]
    try:
        pushed = push_through(rs, segment, operations)
    except GeometryError as exc:
        return serial, [('endpoint_law', False, {**evidence, 'error': str(exc)})]
    return serial, [
        ('endpoint_law', pushed.path.end == weight(pushed.gallery) and pushed.gallery == gallery, evidence),
        ('containment', path_in_gallery(pushed, samples=10), evidence),
    ]


def run_paths(options):
    rs = build_root_system(options.type_label)
    samples = min(options.samples, PATH_SAMPLES)
    tallies = _tallies('endpoint_law', 'containment')
    results = _fan_out(lambda serial: _path_item(rs, options.seed, serial), range(samples), options.jobs)
    for serial, found in sorted(results, key=lambda pair: pair[0]):
        for name, ok, evidence in found:
            tallies[name].record(ok, **evidence)
    return _report(Suite.PATHS, options, tallies, corpus={
        'type': rs.type_label, 'samples': samples, 'seed': options.seed,
    })


RUNNERS = {
    Suite.OPERATORS: run_operators,
    Suite.THEOREMS: run_theorems,
    Suite.TREE: run_tree,
    Suite.PATHS: run_paths,
}


def run_suite(suite, options):
    if suite == Suite.ALL:
        reports = [RUNNERS[name](options) for name in RUNNERS]
        return {'suite': Suite.ALL, 'ok': all(r['ok'] for r in reports), 'suites': reports}
    return RUNNERS[suite](options)


def render_report(report):
    return JSONRenderer().render(report, renderer_context={'indent': 2})
