from ...runner import Command as Run
from ..base import DiffposetCommand


class Command(DiffposetCommand):
    help = 'Runs the full verification pipeline'
    command = Run.VERIFY_ALL
