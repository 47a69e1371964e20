from ...runner import Command as Run
from ..base import DiffposetCommand


class Command(DiffposetCommand):
    help = 'Finds and verifies the chain pair (t, s) and its pairing profile'
    command = Run.CHAINS
