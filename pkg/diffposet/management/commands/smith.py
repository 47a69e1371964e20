from ...runner import Command as Run
from ..base import DiffposetCommand


class Command(DiffposetCommand):
    help = 'Smith normal form of DU_n + kI and the divisibility bound of its last entry'
    command = Run.SMITH
