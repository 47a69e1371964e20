import json
import os
import tempfile
from io import StringIO
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from diffposet import cli
from diffposet.constructions import build_young
from diffposet.hasse import dump_hasse
from diffposet.runner import Command, RunConfig, run, run_jobs, _smith_jobs
from diffposet.chains import find_chain_pair
from diffposet.exceptions import RunConfigError
from diffposet.posets import check_axioms

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'fixtures')


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def path(self, name):
        return os.path.join(self.directory.name, name)

    def call(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return out.getvalue()

    def assertFails(self, returncode, *args):
        out = StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command(*args, stdout=out)
        self.assertEqual(cm.exception.returncode, returncode)
        return out.getvalue()


class BuildCommandTest(CommandTestCase):

    def test_build_to_file(self):
        output = self.call('build', '--family', 'young', '--ranks', '4', '--out', self.path('young.hasse'))
        self.assertIn('PASS build: young through rank 4', output)
        output = self.call('check_axioms', '--in', self.path('young.hasse'))
        self.assertIn('PASS axioms', output)

    def test_build_to_stdout(self):
        output = self.call('build', '--family', 'product', '--factors', 'young,yf', '--ranks', '2')
        self.assertTrue(output.startswith('# diffposet-hasse v1\nrank_sizes: 1 2 5\nr: 2\n'))

    def test_build_errors(self):
        self.assertFails(2, 'build', '--family', 'tamari', '--ranks', '4')
        self.assertFails(2, 'build', '--family', 'young', '--factors', 'yf', '--ranks', '4')
        self.assertFails(2, 'build', '--family', 'young', '--ranks', '0')


class VerificationCommandTest(CommandTestCase):

    def setUp(self):
        super().setUp()
        self.young = self.path('young.hasse')
        dump_hasse(build_young(6), self.young)
        self.broken = self.path('broken.hasse')
        dump_hasse(build_young(6).without_edge(3, 1, 2), self.broken)

    def test_check(self):
        output = self.assertFails(1, 'check_axioms', '--in', self.broken)
        self.assertIn('FAIL axioms', output)
        self.assertIn('"(2,1)"', output)

    def test_smith(self):
        output = self.call('smith', '--in', self.young, '--n', '2', '--k', '1')
        self.assertIn('diagonal: 1 8', output)
        self.assertIn('bound 8 divides last Smith entry 8', output)

    def test_fundamental_json(self):
        output = self.call('fundamental', '--in', self.young, '--n', '1..3', '--k', '1,2', '--json')
        records = [json.loads(line) for line in output.splitlines()]
        self.assertEqual(len(records), 6)
        self.assertTrue(all(record['kind'] == 'fundamental' and record['passed'] for record in records))
        self.assertEqual(records[2]['multiplier'], 8)
        self.assertEqual(records[2]['v']['coeffs'], {'0': '3/8', '1': '-1/8'})

    def test_chains(self):
        output = self.call('chains', '--in', self.young)
        self.assertIn('t: 0:0 "∅" < 1:0 "(1)" < 2:0 "(2)"', output)

    def test_spectrum(self):
        output = self.call('spectrum', '--in', self.young, '--n', '2')
        self.assertIn('(t+1)^1 (t+2)^0 (t+3)^1', output)

    def test_certify_growth(self):
        output = self.call('certify_growth', '--in', self.young, '--all', '--json')
        records = [json.loads(line) for line in output.splitlines()]
        self.assertEqual([record['n'] for record in records], [2, 3, 4, 5])
        self.assertEqual([record['delta'] for record in records], [1, 1, 2, 2])
        self.assertTrue(all(record['concluded'] for record in records))

    def test_verify_all(self):
        output = self.call('verify_all', '--in', self.young, '--k', '1..2', '--json')
        records = [json.loads(line) for line in output.splitlines()]
        kinds = [record['kind'] for record in records]
        self.assertEqual(kinds[:2], ['axioms', 'chains'])
        self.assertEqual(kinds[-1], 'oracle')
        for kind in ('fundamental', 'pairing', 'first-column', 'smith', 'growth', 'spectrum', 'certificate'):
            self.assertIn(kind, kinds)
        self.assertTrue(all(record['passed'] for record in records))

    def test_verify_all_broken(self):
        output = self.assertFails(1, 'verify_all', '--in', self.broken)
        self.assertIn('FAIL axioms', output)
        self.assertIn('SKIP skipped: smith (axiom check failed)', output)

    def test_every_deleted_edge(self):
        young = build_young(5)
        # covers out of rank 2 and out of rank 3
        for n in (2, 3):
            for i, j in sorted(young.cover_edges[n]):
                broken = young.without_edge(n, i, j)
                self.assertFalse(check_axioms(broken, 1).passed)
                path = self.path(f'broken-{n}-{i}-{j}.hasse')
                dump_hasse(broken, path)
                output = self.assertFails(1, 'verify_all', '--in', path)
                self.assertIn('FAIL axioms', output)

    def test_input_errors(self):
        self.assertFails(2, 'check_axioms', '--in', os.path.join(FIXTURES, 'bad_utf8.hasse'))
        self.assertFails(2, 'check_axioms', '--in', self.path('missing.hasse'))
        self.assertFails(2, 'smith', '--in', self.young, '--n', '6')
        self.assertFails(2, 'smith', '--in', self.young, '--k', '0')
        self.assertFails(2, 'fundamental', '--in', self.young, '--n', '3..1')


class RunnerTest(SimpleTestCase):

    def test_config(self):
        with self.assertRaises(RunConfigError):
            RunConfig(Command.SMITH)
        with self.assertRaises(RunConfigError):
            RunConfig(Command.BUILD)
        with self.assertRaises(RunConfigError):
            RunConfig(Command.SMITH, input_path='x', k_values=(0,))
        config = RunConfig('verify-all', input_path='x')
        # Defaults come from the test settings
        self.assertEqual(config.k_values, (1, 2))
        self.assertEqual((config.jobs, config.seed), (1, 0))

    def test_run(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'young.hasse')
            dump_hasse(build_young(5), path)
            result = run(RunConfig(Command.VERIFY_ALL, input_path=path, k_values=(1,)))
        self.assertTrue(result.passed)
        self.assertEqual(result.exit_status, 0)

    def test_parallel_jobs(self):
        young = build_young(5)
        jobs = _smith_jobs(young, find_chain_pair(young, 1), 1, range(1, 4), (1, 2))
        self.assertEqual(run_jobs(jobs, 2), run_jobs(jobs, 1))


class ConsoleScriptTest(SimpleTestCase):

    @mock.patch('django.core.management.execute_from_command_line')
    def test_aliases(self, execute):
        cli.main(['diffposet', 'verify-all', '--in', 'x.hasse'])
        execute.assert_called_once_with(['diffposet', 'verify_all', '--in', 'x.hasse'])
        cli.main(['diffposet', 'smith', '--in', 'x.hasse'])
        execute.assert_called_with(['diffposet', 'smith', '--in', 'x.hasse'])
