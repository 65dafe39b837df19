import pytest

from model_zoo import ZooModelSpec, train


@pytest.fixture(scope="session")
def models_dir(tmp_path_factory):
    """One shared artifact directory with the models the tests exercise."""
    root = tmp_path_factory.mktemp("models")
    train(ZooModelSpec("DT", "churn"), root)
    train(ZooModelSpec("Const", "churn"), root)
    return root
