import subprocess
import sys

from lrcodes import kernels


def test_fallback_selected_when_extension_missing():
    code = (
        "import sys; sys.modules['lrcodes._kernels'] = None\n"
        "from lrcodes import kernels, build, verify_sequential\n"
        "assert kernels.available() == ['python'] and kernels.active.BACKEND == 'python'\n"
        "rep = verify_sequential(build('fixture:eq3_14_8').code, 4, 3)\n"
        "assert rep.passed and rep.backend == 'python'\n"
        "try:\n    kernels.use('compiled')\nexcept ImportError:\n    print('ok')\n"
    )
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "ok"


def test_default_prefers_compiled():
    assert kernels.available()[-1] == "python"
    assert kernels.active.BACKEND == kernels.available()[0]
    assert kernels.get("python").BACKEND == "python"
