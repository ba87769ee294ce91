import json
from io import BytesIO

import pytest

from metaparadox import EffectMeasure
from metaparadox import StudyFormat
from metaparadox import StudyParseError
from metaparadox import load_studies
from metaparadox import parse_studies
from tests.utils import FUSION_CSV


class TestParseCsv:
    def test_named_ci_columns(self):
        # GIVEN
        source = b"label,measure,input_kind,lo,hi\nF2016,MD,ci,0.19,0.71\n"

        # WHEN
        studies = parse_studies(source, StudyFormat.CSV)

        # THEN
        assert len(studies) == 1
        assert studies[0].label == "F2016"
        assert studies[0].y == pytest.approx(0.45)
        assert studies[0].se == pytest.approx(0.13265, abs=1e-5)

    def test_positional_fields(self):
        # GIVEN
        source = b"label,measure,input_kind,f1,f2\nF2016,MD,ci,0.19,0.71\n"

        # WHEN
        studies = parse_studies(source)

        # THEN
        assert studies[0].y == pytest.approx(0.45)

    def test_header_ending_at_input_kind_reads_fields_positionally(self):
        # GIVEN
        source = b"label,measure,input_kind\nF2016,MD,ci,0.19,0.71\nB,MD,point,0.5,0.1\n"

        # WHEN
        first, second = parse_studies(source)

        # THEN
        assert first.label == "F2016"
        assert first.y == pytest.approx(0.45)
        assert first.se == pytest.approx(0.13265, abs=1e-5)
        assert second.v == pytest.approx(0.01)

    def test_header_only_gives_no_studies(self):
        assert parse_studies(b"label,measure,input_kind,y,se\n") == []

    def test_row_order_is_preserved(self):
        studies = parse_studies(FUSION_CSV)
        assert [study.label for study in studies] == ["study 1", "study 2"]

    def test_every_input_kind(self):
        # GIVEN
        source = (
            b"label,measure,input_kind,y,se,lo,hi,n1,mean1,sd1,n2,mean2,sd2,a,b,c,d\n"
            b"p,MD,point,0.5,0.1,,,,,,,,,,,,\n"
            b"i,OR,ci,,,1.04,1.41,,,,,,,,,,\n"
            b"m,MD,arms,,,,,100,5.0,2.0,100,4.0,2.0,,,,\n"
            b"c,OR,counts,,,,,,,,,,,20,80,10,90\n"
        )

        # WHEN
        studies = parse_studies(source)

        # THEN
        assert [study.measure for study in studies] == [
            EffectMeasure.MEAN_DIFFERENCE,
            EffectMeasure.ODDS_RATIO,
            EffectMeasure.MEAN_DIFFERENCE,
            EffectMeasure.ODDS_RATIO,
        ]
        assert studies[0].v == pytest.approx(0.01)
        assert studies[2].y == pytest.approx(1.0)
        assert studies[3].v == pytest.approx(1 / 20 + 1 / 80 + 1 / 10 + 1 / 90)

    def test_input_kind_is_inferred(self):
        studies = parse_studies(b"label,measure,y,se\nA,MD,0.5,0.1\n")
        assert studies[0].y == 0.5

    def test_per_row_level(self):
        # GIVEN
        source = b"label,measure,lo,hi,level\nA,MD,-1,1,0.5\nB,MD,-1,1,\n"

        # WHEN
        first, second = parse_studies(source)

        # THEN
        assert first.se > second.se

    def test_default_level_can_be_overridden(self):
        narrow = parse_studies(b"label,measure,lo,hi\nA,MD,-1,1\n", level=0.5)
        wide = parse_studies(b"label,measure,lo,hi\nA,MD,-1,1\n")
        assert narrow[0].se > wide[0].se

    def test_byte_order_mark_is_ignored(self):
        studies = parse_studies(b"\xef\xbb\xbf" + FUSION_CSV)
        assert len(studies) == 2

    def test_reads_from_a_file_object(self):
        assert len(parse_studies(BytesIO(FUSION_CSV))) == 2


class TestParseCsvErrors:
    def test_negative_se_names_the_row(self):
        # GIVEN
        source = b"label,measure,input_kind,y,se\nA,MD,point,0.1,0.2\nB,MD,point,0.1,-1\n"

        # WHEN
        with pytest.raises(StudyParseError) as excinfo:
            parse_studies(source)

        # THEN
        assert str(excinfo.value).startswith("row 3: se must be > 0")
        assert excinfo.value.row == 3

    def test_unknown_measure(self):
        with pytest.raises(StudyParseError, match="row 2: measure: unknown measure 'HR'"):
            parse_studies(b"label,measure,y,se\nA,HR,0.1,0.2\n")

    def test_non_numeric_field(self):
        with pytest.raises(StudyParseError) as excinfo:
            parse_studies(b"label,measure,y,se\nA,MD,abc,0.2\n")
        assert excinfo.value.row == 2
        assert excinfo.value.column == "y"

    def test_conflicting_column_sets(self):
        with pytest.raises(StudyParseError, match="conflicting column sets"):
            parse_studies(b"label,measure,y,se,lo,hi\nA,MD,0.1,0.2,0.0,1.0\n")

    def test_extra_fields_for_the_declared_kind(self):
        with pytest.raises(StudyParseError, match="conflicting column sets"):
            parse_studies(b"label,measure,input_kind,y,se,lo\nA,MD,point,0.1,0.2,0.0\n")

    def test_arms_require_mean_differences(self):
        with pytest.raises(StudyParseError, match="requires measure MD"):
            parse_studies(
                b"label,measure,n1,mean1,sd1,n2,mean2,sd2\nA,OR,10,1,1,10,1,1\n"
            )

    def test_missing_required_field(self):
        with pytest.raises(StudyParseError) as excinfo:
            parse_studies(b"label,measure,input_kind,y,se\nA,MD,point,0.1,\n")
        assert excinfo.value.column == "se"

    def test_unknown_input_kind(self):
        with pytest.raises(StudyParseError, match="unknown input kind 'box'"):
            parse_studies(b"label,measure,input_kind,y,se\nA,MD,box,0.1,0.2\n")

    def test_header_must_name_label_and_measure(self):
        with pytest.raises(StudyParseError, match="row 1: header must name the measure"):
            parse_studies(b"label,y,se\nA,0.1,0.2\n")

    def test_unknown_column(self):
        with pytest.raises(StudyParseError, match="unknown column 'weight'"):
            parse_studies(b"label,measure,y,se,weight\nA,MD,0.1,0.2,3\n")

    def test_empty_input(self):
        with pytest.raises(StudyParseError, match="missing header"):
            parse_studies(b"")

    def test_invalid_utf8(self):
        with pytest.raises(StudyParseError, match="UTF-8"):
            parse_studies(b"label,measure\n\xff\xfe,MD\n")

    def test_whole_number_counts(self):
        with pytest.raises(StudyParseError, match="whole number"):
            parse_studies(b"label,measure,a,b,c,d\nA,OR,1.5,2,3,4\n")


class TestParseJson:
    def test_array_of_objects(self):
        # GIVEN
        source = json.dumps(
            [
                {"label": "A", "measure": "MD", "input_kind": "ci", "lo": 0.19, "hi": 0.71},
                {"label": "B", "measure": "OR", "a": 10, "b": 10, "c": 10, "d": 10},
            ]
        ).encode()

        # WHEN
        studies = parse_studies(source, StudyFormat.JSON)

        # THEN
        assert studies[0].y == pytest.approx(0.45)
        assert studies[1].measure is EffectMeasure.ODDS_RATIO

    def test_file_level(self):
        # GIVEN
        record = {"label": "A", "measure": "MD", "lo": -1, "hi": 1}
        document = {"level": 0.5, "studies": [record]}

        # WHEN
        (study,) = parse_studies(json.dumps(document).encode(), StudyFormat.JSON)

        # THEN
        assert study.ci(0.5).hi == pytest.approx(1.0)

    def test_element_number_in_errors(self):
        source = b'[{"label": "A", "measure": "MD", "y": 1, "se": 1}, 3]'
        with pytest.raises(StudyParseError, match="row 2: expected a JSON object"):
            parse_studies(source, StudyFormat.JSON)

    def test_unknown_field_names_the_element(self):
        # GIVEN
        source = json.dumps(
            [
                {"label": "A", "measure": "MD", "y": 1, "se": 1},
                {"label": "B", "measure": "MD", "y": 1, "sde": 5},
            ]
        ).encode()

        # WHEN
        with pytest.raises(StudyParseError) as excinfo:
            parse_studies(source, StudyFormat.JSON)

        # THEN
        assert excinfo.value.row == 2
        assert excinfo.value.column == "sde"
        assert "unknown field 'sde'" in str(excinfo.value)

    def test_booleans_are_not_numbers(self):
        source = b'[{"label": "A", "measure": "MD", "y": true, "se": 1}]'
        with pytest.raises(StudyParseError, match="expected a number"):
            parse_studies(source, StudyFormat.JSON)

    def test_invalid_json(self):
        with pytest.raises(StudyParseError, match="invalid JSON"):
            parse_studies(b"[{", StudyFormat.JSON)

    def test_wrong_document_shape(self):
        with pytest.raises(StudyParseError, match="expected an array"):
            parse_studies(b'{"level": 0.95}', StudyFormat.JSON)


class TestLoadStudies:
    def test_format_follows_the_suffix(self, tmp_path):
        # GIVEN
        csv_path = tmp_path / "studies.csv"
        csv_path.write_bytes(FUSION_CSV)
        json_path = tmp_path / "studies.json"
        json_path.write_text('[{"label": "A", "measure": "MD", "y": 1, "se": 1}]')

        # WHEN
        from_csv = load_studies(csv_path)
        from_json = load_studies(json_path)

        # THEN
        assert len(from_csv) == 2
        assert len(from_json) == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_studies(tmp_path / "missing.csv")
