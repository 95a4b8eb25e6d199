import io
import subprocess
import sys

import pytest

from crystalzeta.cli import run
from crystalzeta.io import measure_from_text, zeros_from_text, zeros_to_text
from crystalzeta.zerofind import ZeroRecord


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_construct():
    code, out, _ = call("construct", "--n", "5", "--t", "1")
    assert code == 0
    m = measure_from_text(out)
    assert m.n == 5 and m.coefficients.size == 25


def test_usage_errors():
    code, _, err = call("zeros", "--rect", "1,2,3")
    assert code == 2
    assert "usage:" in err
    code, _, err = call("frobnicate")
    assert code == 2 and "usage:" in err
    code, _, err = call()
    assert code == 2


def test_missing_file_is_input_error(tmp_path):
    code, _, err = call("certify", "--zeros", str(tmp_path / "none.txt"), "--c", "1")
    assert code == 2 and err


def test_sigma0():
    code, out, _ = call("sigma0")
    assert code == 0
    assert out.startswith("10.5640291769")
    code, out, _ = call("--precision", "extended", "sigma0")
    assert code == 0
    assert out.startswith("10.564029176912431")


def test_eval():
    code, out, _ = call("eval", "--function", "zeta", "--s", "2,0")
    assert code == 0
    re, im = (float(v) for v in out.split())
    assert re == pytest.approx(1.6449340668482264) and im == 0


def test_zeta_m_document():
    code, out, _ = call("zeta-m", "--head", "2")
    assert code == 0
    assert '"type": "combination"' in out and '"type": "dirichlet_head"' in out


@pytest.mark.slow
def test_zeros_of_zeta_m(tmp_path):
    path = tmp_path / "z.txt"
    code, _, _ = call("zeros", "--rect", "-21,22,-10,80", "--out", str(path))
    assert code == 0
    zeros, poles = zeros_from_text(path.read_text())
    assert sum(z.multiplicity for z in zeros) == 31
    assert poles == [1 + 0j]
    code, out, _ = call("certify", "--zeros", str(path), "--c", "10.064029176912431")
    assert code == 0
    assert '"kind": "complex"' in out


def test_certify_failure_exit_code(tmp_path):
    path = tmp_path / "z.txt"
    path.write_text(zeros_to_text([ZeroRecord(complex(0.5, 4.7753735547), 1, 0.0, 0.1),
                                   ZeroRecord(complex(-6.3939983623, 28.0995236414), 1, 0.0, 0.1),
                                   ZeroRecord(complex(7.3939983623, 28.0995236414), 1, 0.0, 0.1)]))
    code, out, _ = call("certify", "--zeros", str(path), "--c", "2.0")
    assert code == 1
    assert '"c": false' in out


def test_verify_asymptotics_reports_slopes():
    code, out, _ = call("verify-asymptotics", "--x-grid", "10,20,40,80", "--terms", "1")
    assert code == 0
    assert out.count("slope=") == 2


def test_theta():
    code, out, _ = call("theta", "--x", "0.05")
    assert code == 0
    assert out.startswith("theta,")
    assert "residual_3," in out


def test_bad_ordinates_file(tmp_path):
    path = tmp_path / "o.txt"
    path.write_text("14.1\n13.0\n")
    code, _, err = call("theta", "--x", "1", "--ordinates", str(path))
    assert code == 2 and "line 2" in err


def test_deterministic_outputs(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for p in (a, b):
        assert call("xray", "--rect", "-2,3,0,20", "--resolution", "64x128", "--out", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    first = call("zeros", "--rect", "0,1,1,30")[1]
    assert first == call("zeros", "--rect", "0,1,1,30")[1]
    assert first.count('"kind": "zero"') == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "crystalzeta", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "construct" in proc.stdout
