package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class ReassignAfterClose {
    public void scanTwice(SQLiteDatabase db) {
        Cursor cur = db.rawQuery("SELECT id FROM a", null);
        long id = cur.getLong(0);
        cur.close();
        cur = db.rawQuery("SELECT id FROM b", null);
        try {
            publish(cur.getLong(0));
        } finally {
            cur.close();
        }
    }

    private void publish(long id) {
    }
}
