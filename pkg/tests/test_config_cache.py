import json
from concurrent.futures import ThreadPoolExecutor

import pytest

from symplectic_reductions.exceptions import InvalidParameterError
from symplectic_reductions.utils.cache import ResultCache
from symplectic_reductions.utils.config_manager import CACHE_ENV_VAR, Config, ConfigManager


class TestConfig:
    @pytest.mark.parametrize("field", ["weight_bound", "degree_bound", "sample_count", "workers"])
    def test_bounds_must_be_positive(self, field):
        with pytest.raises(InvalidParameterError):
            Config(**{field: 0})

    def test_seed(self):
        with pytest.raises(InvalidParameterError):
            Config(seed=-1)

    def test_overrides_skip_none(self):
        config = Config().with_overrides(seed=4, weight_bound=None)
        assert config.seed == 4
        assert config.weight_bound == 3


class TestConfigManager:
    def test_defaults(self):
        manager = ConfigManager()
        assert manager.get("bounds.max_rank") == 4
        assert manager.get("missing.key", "fallback") == "fallback"
        assert manager.validate_config()

    def test_user_file_is_merged(self, tmp_path, monkeypatch):
        monkeypatch.delenv(CACHE_ENV_VAR, raising=False)
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"analysis": {"seed": 9}, "bounds": {"max_weight": 5}}))
        config = ConfigManager(str(path)).to_config()
        assert (config.seed, config.max_weight, config.max_rank) == (9, 5, 4)

    def test_unreadable_file_falls_back(self, tmp_path, monkeypatch):
        monkeypatch.delenv(CACHE_ENV_VAR, raising=False)
        path = tmp_path / "config.json"
        path.write_text("{not json")
        assert ConfigManager(str(path)).to_config() == Config()

    def test_precedence(self, tmp_path, monkeypatch):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"cache": {"path": "from-file.json"}, "analysis": {"seed": 2}}))
        monkeypatch.setenv(CACHE_ENV_VAR, "from-env.json")
        manager = ConfigManager(str(path))
        assert manager.to_config().cache_path == "from-env.json"
        overridden = manager.to_config(cache_path="from-cli.json", seed=None)
        assert overridden.cache_path == "from-cli.json"
        assert overridden.seed == 2

    def test_invalid_values(self):
        manager = ConfigManager()
        manager.set("analysis.sample_count", 0)
        assert not manager.validate_config()
        with pytest.raises(InvalidParameterError):
            manager.to_config()
        manager.reset_to_defaults()
        assert manager.validate_config()

    def test_export_import(self, tmp_path):
        manager = ConfigManager()
        manager.set("verification.workers", 3)
        target = tmp_path / "exported.json"
        manager.export_config(str(target))
        other = ConfigManager()
        other.import_config(str(target))
        assert other.get("verification.workers") == 3


class TestResultCache:
    def test_get_or_compute(self, cache, cache_file):
        calls = []

        def compute():
            calls.append(1)
            return 7

        assert cache.get_or_compute("op", [1, [2, 3]], compute) == 7
        assert cache.get_or_compute("op", [1, [2, 3]], compute) == 7
        assert len(calls) == 1
        assert cache_file.exists()
        assert ResultCache(str(cache_file)).get(ResultCache.make_key("op", [1, [2, 3]])) == 7

    def test_versioned_file(self, cache_file):
        cache_file.parent.mkdir(parents=True)
        cache_file.write_text(json.dumps({"version": 0, "entries": {"op:[]": 1}}))
        assert len(ResultCache(str(cache_file))) == 0

    def test_corrupt_file_is_ignored(self, cache_file):
        cache_file.parent.mkdir(parents=True)
        cache_file.write_text("garbage")
        cache = ResultCache(str(cache_file))
        cache.put("op:[]", 3)
        assert json.loads(cache_file.read_text())["entries"] == {"op:[]": 3}

    def test_in_memory(self):
        cache = ResultCache()
        cache.put("k", 1)
        assert cache.get("k") == 1
        assert cache.get_cache_info()["path"] is None

    def test_counters_under_threads(self):
        cache = ResultCache()
        cache.put("k", 1)

        def lookups():
            for _ in range(500):
                cache.get("k")
                cache.get("absent")

        with ThreadPoolExecutor(max_workers=8) as pool:
            for future in [pool.submit(lookups) for _ in range(8)]:
                future.result()
        assert (cache.hits, cache.misses) == (4000, 4000)
