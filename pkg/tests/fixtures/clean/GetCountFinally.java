package app.db;

import android.database.Cursor;
import android.database.sqlite.SQLiteDatabase;

public class GetCountFinally {
    public int total(SQLiteDatabase db) {
        Cursor c = db.rawQuery("SELECT total FROM carts", null);
        try {
            if (c.getCount() > 0) {
                return c.getInt(0);
            }
            return 0;
        } finally {
            c.close();
        }
    }
}
