from pathlib import Path

import pytest

from franklopt.families import family_from_masks
from franklopt.lp import MAX_LINE, assignment_feasible, export, parse_lp, write_lp
from franklopt.models import ModelInstance, ModelKind, build, check_feasible, var_x

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = [
    (ModelKind.F, 2, 2, "f_n2_p2.lp"),
    (ModelKind.G, 3, 5, "g_n3_p5.lp"),
    (ModelKind.FT, 3, 4, "ft_n3_p4.lp"),
    (ModelKind.GT, 4, 9, "gt_n4_p9.lp"),
]


class TestGolden:
    @pytest.mark.parametrize("kind,n,param,name", GOLDEN_CASES)
    def test_byte_equality(self, kind, n, param, name):
        doc = export(build(ModelInstance(kind, n, param)))
        assert doc.text == (GOLDEN / name).read_text()

    def test_row_rendering(self):
        text = (GOLDEN / "f_n2_p2.lp").read_text()
        assert " obj: x_0 + x_1 + x_2 + x_3" in text
        assert " u1: x_1 + x_2 - x_3 <= 1" in text
        assert text.count(" deg") == 2

    def test_deterministic(self):
        inst = ModelInstance(ModelKind.GT, 4, 9)
        assert export(build(inst)).text == export(build(inst)).text

    def test_write_lp(self, tmp_path):
        inst = ModelInstance(ModelKind.F, 2, 2)
        out = tmp_path / "model.lp"
        write_lp(build(inst), out)
        assert out.read_text() == export(build(inst)).text


class TestDocumentShape:
    @pytest.mark.parametrize("kind,n,param,name", GOLDEN_CASES)
    def test_section_order(self, kind, n, param, name):
        lines = export(build(ModelInstance(kind, n, param))).lines
        keywords = [
            l for l in lines if l in ("Maximize", "Minimize", "Subject To", "Bounds", "Binary", "End")
        ]
        expect = ["Maximize" if kind.maximize else "Minimize", "Subject To"]
        if kind.twin:
            expect.append("Bounds")
        expect += ["Binary", "End"]
        assert keywords == expect

    def test_no_variable_repeats_within_a_row(self):
        for kind, n, param, _ in GOLDEN_CASES:
            system = build(ModelInstance(kind, n, param))
            for row in system.constraints:
                names = [var for _, var in row.terms]
                assert len(names) == len(set(names)), row.name

    def test_line_width_cap_and_wrap(self):
        doc = export(build(ModelInstance(ModelKind.G, 6, 20)))
        assert all(len(line) <= MAX_LINE for line in doc.lines)
        # the cardinality row over 64 variables must have wrapped
        card_idx = next(i for i, l in enumerate(doc.lines) if l.startswith(" card:"))
        assert doc.lines[card_idx + 1].startswith("   ")

    def test_header_records_instance(self):
        text = export(build(ModelInstance(ModelKind.FT, 3, 4))).text
        assert "\\ model=ft n=3 param=4" in text
        assert "\\ generator=" in text


class TestReader:
    def test_parse_round_trip_structure(self):
        system = build(ModelInstance(ModelKind.GT, 3, 6))
        parsed = parse_lp(export(system).text)
        assert not parsed.maximize
        assert len(parsed.rows) == len(system.constraints)
        assert parsed.binaries == system.binaries
        assert parsed.bounded == system.unit_interval
        for ours, theirs in zip(system.constraints, parsed.rows):
            assert ours.name == theirs.name
            assert ours.terms == theirs.terms
            assert ours.sense == theirs.sense
            assert ours.rhs == theirs.rhs

    def test_parse_wrapped_rows(self):
        system = build(ModelInstance(ModelKind.G, 6, 20))
        parsed = parse_lp(export(system).text)
        card = next(r for r in parsed.rows if r.name == "card")
        assert len(card.terms) == 64
        assert card.rhs == 20

    @pytest.mark.parametrize(
        "kind,n,param",
        [(ModelKind.F, 3, 3), (ModelKind.G, 3, 5), (ModelKind.FT, 3, 4), (ModelKind.GT, 3, 6)],
    )
    def test_feasibility_matches_model_check_exhaustively(self, kind, n, param):
        inst = ModelInstance(kind, n, param)
        parsed = parse_lp(export(build(inst)).text)
        for bits in range(1 << (1 << n)):
            x_values = {var_x(m): bits >> m & 1 for m in range(1 << n)}
            fam = family_from_masks(n, [m for m in range(1 << n) if bits >> m & 1])
            assert assignment_feasible(parsed, x_values) == bool(
                check_feasible(inst, fam)
            ), (kind, bits)

    def test_rejects_foreign_content(self):
        with pytest.raises(ValueError):
            parse_lp("Garbage\n x + y <= 1\nEnd\n")
